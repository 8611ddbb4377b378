#include "affqh/rootdata.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace affqh {

namespace {

std::vector<int> zeros(int n) { return std::vector<int>(n, 0); }

int vec_height(const std::vector<int>& v) {
    return std::accumulate(v.begin(), v.end(), 0);
}

std::vector<std::int64_t> mat_mul(const std::vector<std::int64_t>& a,
                                  const std::vector<std::int64_t>& b, int n) {
    std::vector<std::int64_t> out(n * n, 0);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k) {
            std::int64_t av = a[r * n + k];
            if (av == 0) continue;
            for (int c = 0; c < n; ++c) out[r * n + c] += av * b[k * n + c];
        }
    return out;
}

std::vector<std::int64_t> mat_identity(int n) {
    std::vector<std::int64_t> m(n * n, 0);
    for (int i = 0; i < n; ++i) m[i * n + i] = 1;
    return m;
}

} // namespace

bool RootVec::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

RootVec RootVec::operator-() const {
    RootVec r = *this;
    for (int& x : r.c) x = -x;
    return r;
}

RootVec RootVec::operator+(const RootVec& o) const {
    RootVec r = *this;
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
    return r;
}

RootVec RootVec::operator-(const RootVec& o) const {
    RootVec r = *this;
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
    return r;
}

bool CoweightVec::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
}

CoweightVec CoweightVec::operator-() const {
    CoweightVec r = *this;
    for (int& x : r.c) x = -x;
    return r;
}

CoweightVec CoweightVec::operator+(const CoweightVec& o) const {
    CoweightVec r = *this;
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
    return r;
}

CoweightVec CoweightVec::operator-(const CoweightVec& o) const {
    CoweightVec r = *this;
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
    return r;
}

ParabolicSet::ParabolicSet(std::initializer_list<int> idx)
    : ParabolicSet(std::vector<int>(idx)) {}

ParabolicSet::ParabolicSet(std::vector<int> idx) : indices(std::move(idx)) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
}

bool ParabolicSet::contains(int i) const {
    return std::binary_search(indices.begin(), indices.end(), i);
}

std::string ParabolicSet::label() const {
    std::string s;
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(indices[k]);
    }
    return s;
}

bool WeylElement::is_identity() const { return length_ == 0; }

CoweightVec WeylElement::act(const CoweightVec& mu) const {
    if ((int)mu.c.size() != rank_)
        throw RankMismatch("WeylElement::act: coweight rank mismatch");
    CoweightVec out{zeros(rank_)};
    for (int r = 0; r < rank_; ++r) {
        long long s = 0;
        for (int c = 0; c < rank_; ++c) s += co_[r * rank_ + c] * mu.c[c];
        out.c[r] = (int)s;
    }
    return out;
}

RootVec WeylElement::act(const RootVec& x) const {
    if ((int)x.c.size() != rank_)
        throw RankMismatch("WeylElement::act: root rank mismatch");
    RootVec out{zeros(rank_)};
    for (int r = 0; r < rank_; ++r) {
        long long s = 0;
        for (int c = 0; c < rank_; ++c) s += rt_[r * rank_ + c] * x.c[c];
        out.c[r] = (int)s;
    }
    return out;
}

CoweightVec WeylElement::act_inverse(const CoweightVec& mu) const {
    if ((int)mu.c.size() != rank_)
        throw RankMismatch("WeylElement::act_inverse: coweight rank mismatch");
    CoweightVec out{zeros(rank_)};
    for (int r = 0; r < rank_; ++r) {
        long long s = 0;
        for (int c = 0; c < rank_; ++c) s += co_inv_[r * rank_ + c] * mu.c[c];
        out.c[r] = (int)s;
    }
    return out;
}

RootVec WeylElement::act_inverse(const RootVec& x) const {
    if ((int)x.c.size() != rank_)
        throw RankMismatch("WeylElement::act_inverse: root rank mismatch");
    RootVec out{zeros(rank_)};
    for (int r = 0; r < rank_; ++r) {
        long long s = 0;
        for (int c = 0; c < rank_; ++c) s += rt_inv_[r * rank_ + c] * x.c[c];
        out.c[r] = (int)s;
    }
    return out;
}

WeylElement WeylElement::inverse() const {
    WeylElement r;
    r.rank_ = rank_;
    r.co_ = co_inv_;
    r.co_inv_ = co_;
    r.rt_ = rt_inv_;
    r.rt_inv_ = rt_;
    r.length_ = length_;
    return r;
}

WeylElement weyl_mul(const RootSystem& rs, const WeylElement& a,
                     const WeylElement& b) {
    if (a.rank_ != b.rank_ || a.rank_ != rs.rank())
        throw RankMismatch("weyl_mul: rank mismatch");
    WeylElement r;
    r.rank_ = a.rank_;
    // (ab)(x) = a(b(x))
    r.co_ = mat_mul(a.co_, b.co_, r.rank_);
    r.co_inv_ = mat_mul(b.co_inv_, a.co_inv_, r.rank_);
    r.rt_ = mat_mul(a.rt_, b.rt_, r.rank_);
    r.rt_inv_ = mat_mul(b.rt_inv_, a.rt_inv_, r.rank_);
    r.length_ = rs.compute_length(r.rt_);
    return r;
}

// --- RootSystem ------------------------------------------------------------

namespace {

// Bourbaki Cartan matrices: simply-laced edges first, then the multiple
// edges are patched in.
std::vector<std::vector<int>> cartan_matrix(char type, int r) {
    std::vector<std::vector<int>> a(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i) a[i][i] = 2;
    auto edge = [&](int i, int j) { a[i - 1][j - 1] = -1; a[j - 1][i - 1] = -1; };
    switch (type) {
        case 'A':
            for (int i = 1; i < r; ++i) edge(i, i + 1);
            break;
        case 'B': // alpha_r short
            for (int i = 1; i < r; ++i) edge(i, i + 1);
            a[r - 2][r - 1] = -2;
            break;
        case 'C': // alpha_r long
            for (int i = 1; i < r; ++i) edge(i, i + 1);
            a[r - 1][r - 2] = -2;
            break;
        case 'D':
            for (int i = 1; i < r - 1; ++i) edge(i, i + 1);
            edge(r - 2, r);
            break;
        case 'E':
            // nodes 1-3-4-5-6(-7-8), node 2 hangs off node 4
            edge(1, 3); edge(3, 4); edge(4, 5); edge(5, 6);
            if (r >= 7) edge(6, 7);
            if (r >= 8) edge(7, 8);
            edge(2, 4);
            break;
        case 'F': // alpha_1, alpha_2 long; alpha_3, alpha_4 short
            edge(1, 2); edge(2, 3); edge(3, 4);
            a[1][2] = -2;
            break;
        case 'G': // alpha_1 short, alpha_2 long
            a[0][1] = -1;
            a[1][0] = -3;
            break;
        default:
            throw InvalidInput("unknown type");
    }
    return a;
}

void validate_type(char type, int rank) {
    auto bad = [&] {
        throw InvalidInput(std::string("invalid type/rank combination: ") +
                           type + std::to_string(rank));
    };
    if (rank < 1 || rank > 8) bad();
    switch (type) {
        case 'A': break;
        case 'B': if (rank < 2) bad(); break;
        case 'C': if (rank < 2) bad(); break;
        case 'D': if (rank < 3) bad(); break;
        case 'E': if (rank < 6) bad(); break;
        case 'F': if (rank != 4) bad(); break;
        case 'G': if (rank != 2) bad(); break;
        default: bad();
    }
}

} // namespace

RootSystem::RootSystem(char type, int rank) : type_(type), rank_(rank) {
    validate_type(type, rank);
    cartan_ = cartan_matrix(type, rank);

    // Simple reflection action matrices:
    //   on coweights: s_i(mu)_k = mu_k - delta_{ki} sum_j cartan[i][j] mu_j
    //   on roots:     s_i(x)_k  = x_k  - delta_{ki} sum_j cartan[j][i] x_j
    simple_refl_.resize(rank);
    for (int i = 0; i < rank; ++i) {
        std::vector<std::int64_t> co = mat_identity(rank), rt = mat_identity(rank);
        for (int j = 0; j < rank; ++j) {
            co[i * rank + j] -= cartan_[i][j];
            rt[i * rank + j] -= cartan_[j][i];
        }
        WeylElement e;
        e.rank_ = rank;
        e.co_ = co;
        e.co_inv_ = co; // involution
        e.rt_ = rt;
        e.rt_inv_ = rt;
        e.length_ = 1;
        simple_refl_[i] = e;
    }

    // All roots, with coroots kept aligned: the orbit of the simple pairs
    // under simple reflections (every root is conjugate to a simple root).
    std::map<std::vector<int>, std::vector<int>> orbit; // root -> coroot
    std::vector<std::pair<RootVec, CoweightVec>> frontier;
    for (int i = 0; i < rank; ++i) {
        RootVec a{zeros(rank)};
        a.c[i] = 1;
        CoweightVec av{zeros(rank)};
        av.c[i] = 1;
        orbit[a.c] = av.c;
        frontier.push_back({a, av});
    }
    while (!frontier.empty()) {
        std::vector<std::pair<RootVec, CoweightVec>> next;
        for (const auto& [a, av] : frontier) {
            for (int i = 0; i < rank; ++i) {
                RootVec b = simple_refl_[i].act(a);
                if (orbit.count(b.c)) continue;
                CoweightVec bv = simple_refl_[i].act(av);
                orbit[b.c] = bv.c;
                next.push_back({b, bv});
            }
        }
        frontier = std::move(next);
    }

    for (auto& [rc, cc] : orbit) {
        bool pos = std::all_of(rc.begin(), rc.end(), [](int x) { return x >= 0; });
        if (!pos) continue;
        pos_roots_.push_back(RootVec{rc});
        pos_coroots_.push_back(CoweightVec{cc});
    }
    // Deterministic enumeration order: by height, then lexicographically.
    std::vector<std::size_t> perm(pos_roots_.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) {
        int hx = vec_height(pos_roots_[x].c), hy = vec_height(pos_roots_[y].c);
        if (hx != hy) return hx < hy;
        return pos_roots_[x].c < pos_roots_[y].c;
    });
    std::vector<RootVec> pr;
    std::vector<CoweightVec> pc;
    for (std::size_t k : perm) {
        pr.push_back(pos_roots_[k]);
        pc.push_back(pos_coroots_[k]);
    }
    pos_roots_ = std::move(pr);
    pos_coroots_ = std::move(pc);
    for (std::size_t k = 0; k < pos_roots_.size(); ++k)
        pos_index_[pos_roots_[k].c] = k;

    // The highest root dominates every positive root coordinate-wise.
    highest_idx_ = pos_roots_.size() - 1;
    const RootVec& hi = pos_roots_[highest_idx_];
    for (const RootVec& a : pos_roots_)
        for (int i = 0; i < rank; ++i)
            if (hi.c[i] < a.c[i])
                throw Error("root system closure produced no highest root");

    refl_cache_.resize(pos_roots_.size());
}

RootVec RootSystem::simple_root(int i) const {
    if (i < 1 || i > rank_) throw InvalidInput("simple root index out of range");
    RootVec a{zeros(rank_)};
    a.c[i - 1] = 1;
    return a;
}

CoweightVec RootSystem::simple_coroot(int i) const {
    if (i < 1 || i > rank_) throw InvalidInput("simple coroot index out of range");
    CoweightVec a{zeros(rank_)};
    a.c[i - 1] = 1;
    return a;
}

long long RootSystem::pairing(const RootVec& x, const CoweightVec& mu) const {
    if ((int)x.c.size() != rank_ || (int)mu.c.size() != rank_)
        throw RankMismatch("pairing: rank mismatch");
    long long s = 0;
    for (int i = 0; i < rank_; ++i) {
        if (x.c[i] == 0) continue;
        for (int j = 0; j < rank_; ++j)
            s += (long long)x.c[i] * cartan_[i][j] * mu.c[j];
    }
    return s;
}

std::optional<int> RootSystem::root_sign(const RootVec& x) const {
    if (pos_index_.count(x.c)) return 1;
    if (pos_index_.count((-x).c)) return -1;
    return std::nullopt;
}

bool RootSystem::is_positive_root(const RootVec& x) const {
    return pos_index_.count(x.c) != 0;
}

std::optional<std::size_t> RootSystem::positive_root_index(const RootVec& x) const {
    auto it = pos_index_.find(x.c);
    if (it != pos_index_.end()) return it->second;
    it = pos_index_.find((-x).c);
    if (it != pos_index_.end()) return it->second;
    return std::nullopt;
}

CoweightVec RootSystem::coroot_of(const RootVec& x) const {
    auto it = pos_index_.find(x.c);
    if (it != pos_index_.end()) return pos_coroots_[it->second];
    it = pos_index_.find((-x).c);
    if (it != pos_index_.end()) return -pos_coroots_[it->second];
    throw InvalidInput("coroot_of: not a root");
}

int RootSystem::compute_length(const std::vector<std::int64_t>& rt) const {
    int len = 0;
    for (const RootVec& a : pos_roots_) {
        long long first = 0;
        for (int r = 0; r < rank_; ++r) {
            long long s = 0;
            for (int c = 0; c < rank_; ++c) s += rt[r * rank_ + c] * a.c[c];
            if (s != 0) { first = s; break; }
        }
        if (first < 0) ++len;
    }
    return len;
}

WeylElement RootSystem::identity() const {
    auto id = mat_identity(rank_);
    WeylElement e;
    e.rank_ = rank_;
    e.co_ = id;
    e.co_inv_ = id;
    e.rt_ = id;
    e.rt_inv_ = id;
    e.length_ = 0;
    return e;
}

WeylElement RootSystem::simple_reflection(int i) const {
    if (i < 1 || i > rank_) throw InvalidInput("simple reflection index out of range");
    return simple_refl_[i - 1];
}

const WeylElement& RootSystem::reflection(std::size_t idx) const {
    if (idx >= pos_roots_.size()) throw InvalidInput("reflection: bad root index");
    std::lock_guard<std::mutex> lock(refl_mutex_);
    WeylElement& slot = refl_cache_[idx];
    if (!slot.co_.empty()) return slot;
    // s_alpha: mu -> mu - alpha(mu) alpha_coroot, x -> x - <x, alpha_coroot> alpha
    const RootVec& a = pos_roots_[idx];
    const CoweightVec& av = pos_coroots_[idx];
    std::vector<std::int64_t> co = mat_identity(rank_), rt = mat_identity(rank_);
    for (int j = 0; j < rank_; ++j) {
        long long aj = pairing(a, simple_coroot(j + 1));      // alpha(alpha_j_coroot)
        long long bj = pairing(simple_root(j + 1), av);       // <alpha_j, alpha_coroot>
        for (int r = 0; r < rank_; ++r) {
            co[r * rank_ + j] -= aj * av.c[r];
            rt[r * rank_ + j] -= bj * a.c[r];
        }
    }
    WeylElement e;
    e.rank_ = rank_;
    e.co_ = co;
    e.co_inv_ = co;
    e.rt_ = rt;
    e.rt_inv_ = rt;
    e.length_ = compute_length(rt);
    slot = e;
    return slot;
}

unsigned long long RootSystem::weyl_order() const {
    auto fact = [](int n) {
        unsigned long long f = 1;
        for (int i = 2; i <= n; ++i) f *= i;
        return f;
    };
    switch (type_) {
        case 'A': return fact(rank_ + 1);
        case 'B':
        case 'C': return fact(rank_) << rank_;
        case 'D': return fact(rank_) << (rank_ - 1);
        case 'E':
            if (rank_ == 6) return 51840ULL;
            if (rank_ == 7) return 2903040ULL;
            return 696729600ULL;
        case 'F': return 1152ULL;
        case 'G': return 12ULL;
    }
    return 0;
}

void RootSystem::validate_parabolic(const ParabolicSet& p) const {
    for (int i : p.indices)
        if (i < 1 || i > rank_)
            throw InvalidInput("parabolic index out of range: " + std::to_string(i));
}

std::vector<std::size_t> RootSystem::parabolic_positive_roots(const ParabolicSet& p) const {
    validate_parabolic(p);
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < pos_roots_.size(); ++k) {
        bool inside = true;
        for (int i = 0; i < rank_; ++i)
            if (pos_roots_[k].c[i] != 0 && !p.contains(i + 1)) { inside = false; break; }
        if (inside) out.push_back(k);
    }
    return out;
}

RootSystem build_root_system(char type, int rank) { return RootSystem(type, rank); }

// --- group enumeration ------------------------------------------------------

namespace {

constexpr unsigned long long kWeylEnumerationCap = 200000ULL;

std::vector<WeylElement> orbit_closure(const RootSystem& rs,
                                       const std::vector<int>& generators) {
    std::set<std::vector<std::int64_t>> seen;
    std::vector<WeylElement> out{rs.identity()};
    seen.insert(rs.identity().key());
    std::vector<WeylElement> frontier = out;
    while (!frontier.empty()) {
        std::vector<WeylElement> next;
        for (const WeylElement& w : frontier) {
            for (int i : generators) {
                WeylElement u = weyl_mul(rs, w, rs.simple_reflection(i));
                if (seen.count(u.key())) continue;
                seen.insert(u.key());
                next.push_back(u);
                out.push_back(u);
            }
        }
        frontier = std::move(next);
    }
    return out;
}

} // namespace

WeylData enumerate_weyl(const RootSystem& rs, const ParabolicSet& p) {
    rs.validate_parabolic(p);
    if (rs.weyl_order() > kWeylEnumerationCap)
        throw EnumerationCapExceeded("Weyl group too large to enumerate: |W| = " +
                                     std::to_string(rs.weyl_order()));
    std::vector<int> all(rs.rank());
    std::iota(all.begin(), all.end(), 1);

    WeylData d;
    d.group = orbit_closure(rs, all);
    d.subgroup = orbit_closure(rs, p.indices);
    std::sort(d.group.begin(), d.group.end());
    std::sort(d.subgroup.begin(), d.subgroup.end());

    for (const WeylElement& w : d.group) {
        bool minimal = true;
        for (int i : p.indices) {
            if (weyl_mul(rs, w, rs.simple_reflection(i)).length() < w.length()) {
                minimal = false;
                break;
            }
        }
        if (minimal) d.minimal.push_back(w);
    }
    return d;
}

WeylElement min_coset_rep(const RootSystem& rs, const WeylElement& w,
                          const ParabolicSet& p) {
    rs.validate_parabolic(p);
    WeylElement cur = w;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i : p.indices) {
            // right descent at i: cur(alpha_i) < 0
            RootVec im = cur.act(rs.simple_root(i));
            if (rs.root_sign(im).value_or(0) < 0) {
                cur = weyl_mul(rs, cur, rs.simple_reflection(i));
                changed = true;
            }
        }
    }
    return cur;
}

std::vector<int> reduced_word_finite(const RootSystem& rs, const WeylElement& w) {
    std::vector<int> word;
    WeylElement cur = w;
    while (true) {
        // left descent at i: cur^{-1}(alpha_i) < 0; take the least such i
        int pick = 0;
        for (int i = 1; i <= rs.rank(); ++i) {
            RootVec im = cur.act_inverse(rs.simple_root(i));
            if (rs.root_sign(im).value_or(0) < 0) { pick = i; break; }
        }
        if (pick == 0) break;
        word.push_back(pick);
        cur = weyl_mul(rs, rs.simple_reflection(pick), cur);
    }
    if (!cur.is_identity())
        throw Error("reduced_word_finite: descent walk did not reach identity");
    return word;
}

WeylElement weyl_from_word(const RootSystem& rs, const std::vector<int>& word) {
    WeylElement w = rs.identity();
    for (int i : word) w = weyl_mul(rs, w, rs.simple_reflection(i));
    return w;
}

long long omega_pairing(int i, const CoweightVec& mu) {
    if (i < 1 || i > (int)mu.c.size())
        throw InvalidInput("omega_pairing: index out of range");
    return mu.c[i - 1];
}

RootVec omega_minus_v_omega(const RootSystem& rs, int i, const WeylElement& v) {
    // Telescoping over v = s_{j_1} ... s_{j_m}:
    //   omega - v(omega) = sum_t <omega, v_{t+1}^{-1}(alpha_{j_t} coroot)> alpha_{j_t}
    // with v_{t+1} the suffix s_{j_{t+1}} ... s_{j_m}.
    std::vector<int> word = reduced_word_finite(rs, v);
    RootVec out{std::vector<int>(rs.rank(), 0)};
    WeylElement suffix = rs.identity();
    for (int t = (int)word.size() - 1; t >= 0; --t) {
        int j = word[t];
        CoweightVec cv = suffix.act_inverse(rs.simple_coroot(j));
        out.c[j - 1] += (int)omega_pairing(i, cv);
        suffix = weyl_mul(rs, rs.simple_reflection(j), suffix);
    }
    return out;
}

} // namespace affqh

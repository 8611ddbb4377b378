#include "affqh/tableio.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "affqh/errors.hpp"
#include "affqh/textio.hpp"
#include "json.hpp"

namespace affqh {

namespace {

using nlohmann::json;

// FNV-1a, for short stable filename suffixes derived from the fingerprint.
std::string fnv1a_hex(const std::string& s) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

json header_to_json(const TableHeader& h) {
    json j;
    j["schema_version"] = h.schema_version;
    j["group_type"] = std::string(1, h.group_type);
    j["rank"] = h.rank;
    j["parabolic"] = h.parabolic;
    j["basis"] = h.basis;
    j["max_length"] = h.max_length;
    j["fingerprint"] = h.fingerprint;
    return j;
}

TableHeader header_from_json(const json& j) {
    TableHeader h;
    h.schema_version = j.at("schema_version").get<int>();
    std::string type = j.at("group_type").get<std::string>();
    if (type.size() != 1) throw ParseError("group_type must be one letter");
    h.group_type = type[0];
    h.rank = j.at("rank").get<int>();
    h.parabolic = j.at("parabolic").get<std::vector<int>>();
    h.basis = j.at("basis").get<std::string>();
    h.max_length = j.at("max_length").get<int>();
    h.fingerprint = j.at("fingerprint").get<std::string>();
    return h;
}

void check_header(const TableHeader& h, const RootSystem& rs,
                  const std::string& basis) {
    if (h.schema_version != table_schema_version)
        throw ParseError("unsupported table schema version " +
                         std::to_string(h.schema_version));
    if (h.basis != basis)
        throw InvalidInput("expected a '" + basis + "' table, found '" +
                           h.basis + "'");
    if (h.group_type != rs.type() || h.rank != rs.rank())
        throw InvalidInput("table is for type " +
                           std::string(1, h.group_type) +
                           std::to_string(h.rank) + ", not this root system");
    if (h.fingerprint != convention_fingerprint())
        throw InvalidInput("table was produced under different conventions");
}

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad table JSON: ") + e.what());
    }
}

std::string dump_document(const json& j) { return j.dump(2) + "\n"; }

} // namespace

std::string convention_fingerprint() {
    return std::string(GrRing::convention_tag()) + "|" +
           QHRing::convention_tag();
}

TableHeader xi_table_header(const RootSystem& rs, int max_length) {
    TableHeader h;
    h.group_type = rs.type();
    h.rank = rs.rank();
    h.basis = "xi";
    h.max_length = max_length;
    h.fingerprint = convention_fingerprint();
    return h;
}

TableHeader qh_table_header(const RootSystem& rs, const ParabolicSet& p,
                            int max_length) {
    TableHeader h;
    h.group_type = rs.type();
    h.rank = rs.rank();
    h.parabolic = p.indices;
    h.basis = "qh";
    h.max_length = max_length;
    h.fingerprint = convention_fingerprint();
    return h;
}

GrClassVector specialize_class(const RootSystem& rs, const GrClassVector& c) {
    GrClassVector out;
    for (const auto& [z, coeff] : c.entries)
        out.add(z, LinFrac::from_int(rs.rank(), coeff.specialize_zero()));
    return out;
}

QuantumClass specialize_class(const RootSystem& rs, const QuantumClass& c) {
    QuantumClass out;
    for (const auto& [key, poly] : c.entries)
        out.add(key.first, key.second,
                Poly::constant(rs.rank(), poly.constant_term()));
    return out;
}

XiTable compute_xi_table(const GrRing& gr, int max_length,
                         bool non_equivariant) {
    const RootSystem& rs = gr.root_system();
    XiTable t;
    t.header = xi_table_header(rs, max_length);
    const auto elems = enumerate_waf_minus(rs, max_length);
    for (const AffineWeylElement& u : elems)
        for (const AffineWeylElement& v : elems) {
            GrClassVector c = gr.structure_constants(u, v);
            if (non_equivariant) c = specialize_class(rs, c);
            t.products[{u, v}] = std::move(c);
        }
    return t;
}

QhTable compute_qh_table(const QHRing& qh, int max_length,
                         bool non_equivariant) {
    const RootSystem& rs = qh.root_system();
    QhTable t;
    t.header = qh_table_header(rs, qh.parabolic(), max_length);
    for (const WeylElement& u : qh.coset_reps()) {
        if (u.length() > max_length) continue;
        for (const WeylElement& v : qh.coset_reps()) {
            if (v.length() > max_length) continue;
            QuantumClass c = qh.quantum_product(u, v);
            if (non_equivariant) c = specialize_class(rs, c);
            t.products[{u, v}] = std::move(c);
        }
    }
    return t;
}

std::string xi_table_to_json(const RootSystem& rs, const XiTable& t) {
    json rows = json::array();
    for (const auto& [pair, expansion] : t.products)
        for (const auto& [z, coeff] : expansion.entries) {
            json row;
            row["u"] = aff_to_string(rs, pair.first);
            row["v"] = aff_to_string(rs, pair.second);
            row["z"] = aff_to_string(rs, z);
            row["coeff"] = poly_to_string(coeff.to_poly());
            rows.push_back(std::move(row));
        }
    json j;
    j["header"] = header_to_json(t.header);
    j["rows"] = std::move(rows);
    return dump_document(j);
}

XiTable xi_table_from_json(const RootSystem& rs, const std::string& text) {
    json j = parse_document(text);
    XiTable t;
    try {
        t.header = header_from_json(j.at("header"));
        check_header(t.header, rs, "xi");
        for (const json& row : j.at("rows")) {
            AffineWeylElement u =
                aff_from_string(rs, row.at("u").get<std::string>());
            AffineWeylElement v =
                aff_from_string(rs, row.at("v").get<std::string>());
            AffineWeylElement z =
                aff_from_string(rs, row.at("z").get<std::string>());
            Poly coeff =
                poly_from_string(row.at("coeff").get<std::string>(), rs.rank());
            auto it = t.products.try_emplace({u, v}, GrClassVector{}).first;
            it->second.add(z, LinFrac::from_poly(coeff));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad table JSON: ") + e.what());
    }
    return t;
}

std::string qh_table_to_json(const RootSystem& rs, const QhTable& t) {
    json rows = json::array();
    for (const auto& [pair, product] : t.products)
        for (const auto& [key, coeff] : product.entries) {
            json row;
            row["u"] = weyl_to_string(rs, pair.first);
            row["v"] = weyl_to_string(rs, pair.second);
            row["beta"] = curve_to_string(key.first);
            row["w"] = weyl_to_string(rs, key.second);
            row["coeff"] = poly_to_string(coeff);
            rows.push_back(std::move(row));
        }
    json j;
    j["header"] = header_to_json(t.header);
    j["rows"] = std::move(rows);
    return dump_document(j);
}

QhTable qh_table_from_json(const RootSystem& rs, const std::string& text) {
    json j = parse_document(text);
    QhTable t;
    try {
        t.header = header_from_json(j.at("header"));
        check_header(t.header, rs, "qh");
        const std::size_t nfree = static_cast<std::size_t>(rs.rank()) -
                                  t.header.parabolic.size();
        for (const json& row : j.at("rows")) {
            WeylElement u = weyl_from_string(rs, row.at("u").get<std::string>());
            WeylElement v = weyl_from_string(rs, row.at("v").get<std::string>());
            CurveClass beta =
                curve_from_string(row.at("beta").get<std::string>(), nfree);
            WeylElement w = weyl_from_string(rs, row.at("w").get<std::string>());
            Poly coeff =
                poly_from_string(row.at("coeff").get<std::string>(), rs.rank());
            auto it = t.products.try_emplace({u, v}, QuantumClass{}).first;
            it->second.add(beta, w, coeff);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad table JSON: ") + e.what());
    }
    return t;
}

std::string report_to_json(const RootSystem& rs, const VerifyReport& r) {
    json failures = json::array();
    for (const VerifyFailure& f : r.failures) {
        json row;
        row["u"] = aff_to_string(rs, f.u);
        row["v"] = aff_to_string(rs, f.v);
        row["what"] = f.what;
        failures.push_back(std::move(row));
    }
    json j;
    j["group_type"] = std::string(1, r.group_type);
    j["rank"] = r.rank;
    j["parabolic"] = r.parabolic;
    j["max_length"] = r.max_length;
    j["pairs_checked"] = r.pairs_checked;
    j["failures"] = std::move(failures);
    j["passed"] = r.passed();
    j["timing"] = {{"products", r.seconds_products},
                   {"membership", r.seconds_membership},
                   {"dimension", r.seconds_dimension}};
    return dump_document(j);
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& bytes) {
    std::filesystem::path tmp = path;
    tmp += ".tmp-" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out.good()) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw Error("could not write '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ec2;
        std::filesystem::remove(tmp, ec2);
        throw Error("could not move '" + tmp.string() +
                    "' into place: " + ec.message());
    }
}

CacheDir::CacheDir(const std::filesystem::path& dir) : dir_(dir) {
    std::filesystem::create_directories(dir_);
    std::filesystem::path lock = dir_ / ".lock";
    lock_fd_ = ::open(lock.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (lock_fd_ < 0) {
        if (errno == EEXIST)
            throw InvalidInput("cache directory '" + dir_.string() +
                               "' is locked by another process (remove '" +
                               lock.string() + "' if stale)");
        throw Error("could not lock cache directory '" + dir_.string() +
                    "': " + std::strerror(errno));
    }
    std::string pid = std::to_string(::getpid()) + "\n";
    if (::write(lock_fd_, pid.data(), pid.size()) < 0) {
        // The lock still holds; the pid note is informational only.
    }
}

CacheDir::~CacheDir() {
    if (lock_fd_ >= 0) {
        ::close(lock_fd_);
        std::error_code ec;
        std::filesystem::remove(dir_ / ".lock", ec);
    }
}

std::filesystem::path CacheDir::path_for(const TableHeader& h) const {
    std::string label;
    for (std::size_t i = 0; i < h.parabolic.size(); ++i) {
        if (i) label += "_";
        label += std::to_string(h.parabolic[i]);
    }
    std::string name;
    name += h.group_type;
    name += std::to_string(h.rank);
    name += "-p" + (label.empty() ? std::string("b") : label);
    name += "-L" + std::to_string(h.max_length);
    name += "-" + h.basis;
    name += "-" + fnv1a_hex(h.fingerprint).substr(0, 12);
    name += ".json";
    return dir_ / name;
}

std::optional<std::string> CacheDir::load(const TableHeader& h) const {
    std::ifstream in(path_for(h), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void CacheDir::store(const TableHeader& h, const std::string& json_text) const {
    write_file_atomic(path_for(h), json_text);
}

} // namespace affqh

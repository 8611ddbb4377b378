// Command-line surface: enumeration listings, structure-constant tables,
// quantum products, and verification runs with an optional table cache.
//
// Exit codes: 0 success (verification passed), 1 verification failures,
// 2 usage errors, 3 internal invariant violations.

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "affqh/affweyl.hpp"
#include "affqh/errors.hpp"
#include "affqh/grring.hpp"
#include "affqh/peterson.hpp"
#include "affqh/qhring.hpp"
#include "affqh/rootdata.hpp"
#include "affqh/tableio.hpp"
#include "affqh/textio.hpp"
#include "json.hpp"

using namespace affqh;

namespace {

struct Common {
    std::string type;
    int rank = 0;
    std::string parabolic;
    int max_length = -1;
    std::string out;
};

void add_group_flags(CLI::App* cmd, Common& c, bool with_parabolic) {
    cmd->add_option("--type", c.type,
                    "Group type letter, optionally fused with the rank (A2)")
        ->required();
    cmd->add_option("--rank", c.rank, "Rank (defaulted when the type pins it)");
    if (with_parabolic)
        cmd->add_option("--parabolic", c.parabolic,
                        "Comma-separated simple indices; empty for Borel");
}

// "A2" or "A" + --rank; G and F imply their only ranks.
RootSystem make_root_system(const Common& c) {
    if (c.type.empty()) throw InvalidInput("--type is required");
    char letter = static_cast<char>(std::toupper(
        static_cast<unsigned char>(c.type[0])));
    int fused = 0;
    for (std::size_t i = 1; i < c.type.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(c.type[i])))
            throw InvalidInput("bad --type '" + c.type + "'");
        fused = fused * 10 + (c.type[i] - '0');
    }
    int rank = fused;
    if (c.rank > 0) {
        if (fused > 0 && fused != c.rank)
            throw InvalidInput("--type and --rank disagree on the rank");
        rank = c.rank;
    }
    if (rank == 0) {
        if (letter == 'G') rank = 2;
        else if (letter == 'F') rank = 4;
        else
            throw InvalidInput(std::string("--rank is required for type ") +
                               letter);
    }
    return RootSystem(letter, rank);
}

ParabolicSet make_parabolic(const RootSystem& rs, const std::string& text) {
    if (text.empty()) return ParabolicSet{};
    std::vector<int> idx;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            int i = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            idx.push_back(i);
        } catch (const std::exception&) {
            throw InvalidInput("bad --parabolic entry '" + tok + "'");
        }
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    for (int i : idx)
        if (i < 1 || i > rs.rank())
            throw InvalidInput("parabolic index " + std::to_string(i) +
                               " is out of range");
    return ParabolicSet(idx);
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty())
        std::cout << text;
    else
        write_file_atomic(out_path, text);
}

int require_max_length(const Common& c) {
    if (c.max_length < 0)
        throw InvalidInput("--max-length is required and must be >= 0");
    return c.max_length;
}

// One aligned text table; every cell is already formatted.
std::string render_columns(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (width.size() <= i) width.resize(i + 1, 0);
            width[i] = std::max(width[i], row[i].size());
        }
    std::ostringstream out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << "  ";
            out << std::left << std::setw(static_cast<int>(width[i]))
                << row[i];
        }
        std::string line = out.str();
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out.str(std::string());
        out << line << "\n";
    }
    return out.str();
}

int cmd_enumerate(const Common& c, bool finite, bool as_json) {
    RootSystem rs = make_root_system(c);
    ParabolicSet p = make_parabolic(rs, c.parabolic);

    nlohmann::json jrows = nlohmann::json::array();
    std::vector<std::vector<std::string>> rows;
    std::ostringstream render_buf;

    if (finite) {
        rows.push_back({"length", "element"});
        for (const WeylElement& w : enumerate_weyl(rs, p).minimal) {
            if (c.max_length >= 0 && w.length() > c.max_length) continue;
            std::string word = weyl_to_string(rs, w);
            rows.push_back({std::to_string(w.length()), word});
            jrows.push_back({{"length", w.length()}, {"element", word}});
        }
    } else {
        int maxlen = require_max_length(c);
        rows.push_back(
            {"length", "element", "word", "in_WP_af", "condition_C"});
        for (const AffineWeylElement& x : enumerate_waf_minus(rs, maxlen)) {
            bool member = in_wp_af(rs, x, p);
            bool cond = condition_c(rs, x, p);
            std::string elem = aff_to_string(rs, x);
            std::string word = word_to_string(reduced_word(rs, x));
            long long len = length_minrep(rs, x);
            rows.push_back({std::to_string(len), elem, word,
                            member ? "yes" : "no", cond ? "yes" : "no"});
            jrows.push_back({{"length", len},
                             {"element", elem},
                             {"word", word},
                             {"in_WP_af", member},
                             {"condition_C", cond}});
        }
    }

    std::string text =
        as_json ? jrows.dump(2) + "\n" : render_columns(rows);
    emit(c.out, text);
    return 0;
}

int cmd_gr_constants(const Common& c, bool non_equivariant) {
    RootSystem rs = make_root_system(c);
    GrRing gr(rs);
    XiTable t = compute_xi_table(gr, require_max_length(c), non_equivariant);
    emit(c.out, xi_table_to_json(rs, t));
    return 0;
}

int cmd_qh_product(const Common& c, const std::string& u_text,
                   const std::string& v_text, bool non_equivariant) {
    RootSystem rs = make_root_system(c);
    QHRing qh(rs, make_parabolic(rs, c.parabolic));

    QhTable t;
    if (u_text.empty() != v_text.empty())
        throw InvalidInput("--u and --v must be given together");
    if (!u_text.empty()) {
        WeylElement u = weyl_from_string(rs, u_text);
        WeylElement v = weyl_from_string(rs, v_text);
        if (!qh.in_wp(u) || !qh.in_wp(v))
            throw InvalidInput(
                "--u and --v must be minimal coset representatives");
        QuantumClass prod = qh.quantum_product(u, v);
        if (non_equivariant) prod = specialize_class(rs, prod);
        t.header = qh_table_header(rs, qh.parabolic(),
                                   std::max(u.length(), v.length()));
        t.products[{u, v}] = std::move(prod);
    } else {
        t = compute_qh_table(qh, require_max_length(c), non_equivariant);
    }
    emit(c.out, qh_table_to_json(rs, t));
    return 0;
}

int cmd_verify(const Common& c, const std::string& report_path,
               const std::string& cache_path, int threads) {
    RootSystem rs = make_root_system(c);
    ParabolicSet p = make_parabolic(rs, c.parabolic);
    int maxlen = require_max_length(c);
    GrRing gr(rs);
    QHRing qh(rs, p);

    VerifyReport report;
    if (cache_path.empty()) {
        report = verify_homomorphism(gr, qh, maxlen, threads);
    } else {
        CacheDir cache(cache_path);

        TableHeader xh = xi_table_header(rs, maxlen);
        XiTable xt;
        if (auto text = cache.load(xh)) {
            xt = xi_table_from_json(rs, *text);
        } else {
            xt = compute_xi_table(gr, maxlen);
            cache.store(xh, xi_table_to_json(rs, xt));
        }

        // The quantum side is finite; cache it whole so one table serves
        // every affine length bound.
        int full = 0;
        for (const WeylElement& w : qh.coset_reps())
            full = std::max(full, w.length());
        TableHeader qhh = qh_table_header(rs, p, full);
        QhTable qt;
        if (auto text = cache.load(qhh)) {
            qt = qh_table_from_json(rs, *text);
        } else {
            qt = compute_qh_table(qh, full);
            cache.store(qhh, qh_table_to_json(rs, qt));
        }

        VerifySources sources;
        sources.xi_product = [&xt](const AffineWeylElement& u,
                                   const AffineWeylElement& v) {
            auto it = xt.products.find({u, v});
            if (it == xt.products.end())
                throw Error("cached xi table is missing a product");
            return it->second;
        };
        sources.qh_product = [&qt](const WeylElement& u,
                                   const WeylElement& v) {
            auto it = qt.products.find({u, v});
            if (it == qt.products.end())
                throw Error("cached qh table is missing a product");
            return it->second;
        };
        report = verify_homomorphism(qh, maxlen, threads, sources);
    }

    if (!report_path.empty())
        write_file_atomic(report_path, report_to_json(rs, report));

    std::cout << "type " << report.group_type << report.rank << ", parabolic {"
              << report.parabolic << "}, max length " << report.max_length
              << "\n";
    std::cout << "pairs checked: " << report.pairs_checked << "\n";
    std::cout << "failures: " << report.failures.size() << "\n";
    for (std::size_t i = 0; i < report.failures.size() && i < 10; ++i) {
        const VerifyFailure& f = report.failures[i];
        std::cout << "  [" << aff_to_string(rs, f.u) << "] x ["
                  << aff_to_string(rs, f.v) << "]: " << f.what << "\n";
    }
    std::cout << std::fixed << std::setprecision(2) << "timing: products "
              << report.seconds_products << "s, membership "
              << report.seconds_membership << "s, dimension "
              << report.seconds_dimension << "s\n";
    std::cout << (report.passed() ? "PASS" : "FAIL") << "\n";
    return report.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Affine Schubert / quantum Chevalley engine"};
    app.require_subcommand(1);

    Common c_enum;
    bool enum_finite = false, enum_json = false;
    CLI::App* enumerate =
        app.add_subcommand("enumerate", "List affine or finite elements");
    add_group_flags(enumerate, c_enum, true);
    enumerate->add_option("--max-length", c_enum.max_length, "Length bound");
    enumerate->add_option("--out", c_enum.out, "Write here instead of stdout");
    enumerate->add_flag("--finite", enum_finite,
                        "List W^P instead of the affine minimal elements");
    enumerate->add_flag("--json", enum_json, "Emit JSON rows");

    Common c_gr;
    bool gr_flat = false;
    CLI::App* gr = app.add_subcommand("gr", "Affine Schubert basis commands");
    gr->require_subcommand(1);
    CLI::App* gr_constants = gr->add_subcommand(
        "constants", "Structure-constant table over the minimal elements");
    add_group_flags(gr_constants, c_gr, false);
    gr_constants->add_option("--max-length", c_gr.max_length, "Length bound")
        ->required();
    gr_constants->add_option("--out", c_gr.out, "Write here instead of stdout");
    gr_constants->add_flag("--non-equivariant", gr_flat,
                           "Specialize every coefficient at a = 0");

    Common c_qh;
    bool qh_flat = false;
    std::string qh_u, qh_v;
    CLI::App* qh = app.add_subcommand("qh", "Quantum cohomology commands");
    qh->require_subcommand(1);
    CLI::App* qh_product =
        qh->add_subcommand("product", "Quantum products of Schubert classes");
    add_group_flags(qh_product, c_qh, true);
    qh_product->add_option("--u", qh_u, "Left factor, as a reduced word");
    qh_product->add_option("--v", qh_v, "Right factor, as a reduced word");
    qh_product->add_option("--max-length", c_qh.max_length,
                           "Table mode: bound on the factor lengths");
    qh_product->add_option("--out", c_qh.out, "Write here instead of stdout");
    qh_product->add_flag("--non-equivariant", qh_flat,
                         "Specialize every coefficient at a = 0");

    Common c_verify;
    std::string report_path, cache_path;
    int threads = 0;
    CLI::App* verify = app.add_subcommand(
        "verify", "Check the comparison map on all pairs up to a length");
    add_group_flags(verify, c_verify, true);
    verify->add_option("--max-length", c_verify.max_length, "Length bound")
        ->required();
    verify->add_option("--report", report_path, "Write the JSON report here");
    verify->add_option("--cache-dir", cache_path,
                       "Cache computed tables in this directory");
    verify->add_option("--threads", threads, "Worker threads (0 = auto)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*enumerate) return cmd_enumerate(c_enum, enum_finite, enum_json);
        if (*gr_constants) return cmd_gr_constants(c_gr, gr_flat);
        if (*qh_product) return cmd_qh_product(c_qh, qh_u, qh_v, qh_flat);
        if (*verify)
            return cmd_verify(c_verify, report_path, cache_path, threads);
    } catch (const EnumerationCapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

#pragma once

// Table files and the on-disk cache.  A table file is a JSON document with a
// header (group, rank, parabolic set, basis, length bound, convention
// fingerprint) and rows of structure constants whose values use the canonical
// text forms, so export followed by import reproduces the table exactly and
// identical runs produce byte-identical files.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "affqh/grring.hpp"
#include "affqh/peterson.hpp"
#include "affqh/qhring.hpp"

namespace affqh {

inline constexpr int table_schema_version = 1;

// The pinned sign conventions of both engines, recorded in every table so
// cached data can never cross incompatible builds.
std::string convention_fingerprint();

struct TableHeader {
    int schema_version = table_schema_version;
    char group_type = 0;
    int rank = 0;
    std::vector<int> parabolic; // sorted simple indices; empty for Borel
    std::string basis;          // "xi" or "qh"
    int max_length = 0;
    std::string fingerprint;

    bool operator==(const TableHeader& o) const {
        return schema_version == o.schema_version &&
               group_type == o.group_type && rank == o.rank &&
               parabolic == o.parabolic && basis == o.basis &&
               max_length == o.max_length && fingerprint == o.fingerprint;
    }
};

// Products of affine Schubert classes, keyed by the ordered factor pair.
// The parabolic header field stays empty: this basis does not depend on one.
struct XiTable {
    TableHeader header;
    std::map<std::pair<AffineWeylElement, AffineWeylElement>, GrClassVector>
        products;
};

// Quantum products of finite Schubert classes over one parabolic choice.
struct QhTable {
    TableHeader header;
    std::map<std::pair<WeylElement, WeylElement>, QuantumClass> products;
};

TableHeader xi_table_header(const RootSystem& rs, int max_length);
TableHeader qh_table_header(const RootSystem& rs, const ParabolicSet& p,
                            int max_length);

// Non-equivariant limit a_i -> 0 of every coefficient, dropped when zero.
GrClassVector specialize_class(const RootSystem& rs, const GrClassVector& c);
QuantumClass specialize_class(const RootSystem& rs, const QuantumClass& c);

// All ordered pairs of minimal representatives up to max_length (xi), or of
// coset representatives of length at most max_length (qh).
XiTable compute_xi_table(const GrRing& gr, int max_length,
                         bool non_equivariant = false);
QhTable compute_qh_table(const QHRing& qh, int max_length,
                         bool non_equivariant = false);

std::string xi_table_to_json(const RootSystem& rs, const XiTable& t);
std::string qh_table_to_json(const RootSystem& rs, const QhTable& t);
XiTable xi_table_from_json(const RootSystem& rs, const std::string& text);
QhTable qh_table_from_json(const RootSystem& rs, const std::string& text);

// Report fields verbatim, with the phase timers segregated under "timing" so
// comparisons can drop the one non-deterministic part.
std::string report_to_json(const RootSystem& rs, const VerifyReport& r);

// The bytes land under a temporary name in the target directory first and
// are renamed into place, so readers never observe a half-written file.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& bytes);

// Directory of cached table files, keyed by header.  Creating the object
// takes an exclusive lock file; a second owner of the same directory is
// refused so concurrent processes cannot interleave writes.
class CacheDir {
public:
    explicit CacheDir(const std::filesystem::path& dir);
    ~CacheDir();

    CacheDir(const CacheDir&) = delete;
    CacheDir& operator=(const CacheDir&) = delete;

    const std::filesystem::path& dir() const { return dir_; }
    std::filesystem::path path_for(const TableHeader& h) const;
    // File contents for this key, or nullopt when not cached yet.
    std::optional<std::string> load(const TableHeader& h) const;
    void store(const TableHeader& h, const std::string& json_text) const;

private:
    std::filesystem::path dir_;
    int lock_fd_ = -1;
};

} // namespace affqh

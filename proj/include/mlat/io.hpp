#pragma once

// File formats: arrangement files, scan tables, verdict reports, the result
// cache, and DOT/CSV exports. All numbers are written exactly.

#include "mlat/explorer.hpp"
#include "mlat/theorems.hpp"

#include <json.hpp>

#include <filesystem>
#include <mutex>
#include <string>
#include <unordered_map>

namespace mlat {

using json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// "p/q" for rationals, {"a": "p/q", "b": "p/q"} for a + b sqrt(d).
json scalar_to_json(const Scalar& s);
/// Accepts strings "p/q", JSON integers, and {"a", "b"} objects in a quadratic
/// field. Throws ParseError or FieldMismatch.
Scalar scalar_from_json(const json& j, const FieldSpec& field);

json field_to_json(const FieldSpec& f);
FieldSpec field_from_json(const json& j);

json arrangement_to_json(const Arrangement& arr);
/// Throws ParseError, ProportionalForms, FieldMismatch.
Arrangement arrangement_from_json(const json& j);
Arrangement parse_arrangement(const std::string& text);
std::string dump_arrangement(const Arrangement& arr);

/// Reads a whole file. Throws ParseError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);
Arrangement load_arrangement(const std::filesystem::path& path);

json derivation_to_json(const Derivation& t);
/// {"P": ..., "Q": ...} with P, Q polynomial strings and "degree".
json derivation_report(const Derivation& t);
Derivation derivation_from_json(const json& j, const FieldSpec& field);

json multiplicity_to_json(const Multiplicity& m);
Multiplicity multiplicity_from_json(const json& j);

/// Versioned table without timing, so equal inputs give equal bytes.
json scan_to_json(const ScanResult& scan, bool balanced_only = false);
ScanResult scan_from_json(const json& j);
std::string dump_scan(const ScanResult& scan, bool balanced_only = false);

json components_to_json(const ScanResult& scan, const ComponentIndex& index);
/// Support points as nodes colored by component, centers double-circled,
/// covering edges inside the support.
std::string components_dot(const ScanResult& scan, const ComponentIndex& index);
/// mu,d1,d2,delta,component,classification
std::string components_csv(const ScanResult& scan, const ComponentIndex& index);

json verdict_to_json(const Verdict& v);
json report_to_json(const std::vector<Verdict>& verdicts);

/// Append-only JSON-lines store, one file per directory. Loaded once; puts
/// append under a lock. Identical rewrites are harmless since values are
/// deterministic.
class JsonlCache final : public ResultStore {
public:
    explicit JsonlCache(std::filesystem::path dir);

    /// $ML_CACHE_DIR, else $XDG_CACHE_HOME/ml, else ~/.cache/ml, else ./.ml-cache.
    static std::filesystem::path default_dir();

    std::optional<ExponentResult> find(const std::string& arrangement_hash, const Multiplicity& mu) override;
    void put(const std::string& arrangement_hash, const Multiplicity& mu, const ExponentResult& r) override;

    const std::filesystem::path& file() const { return file_; }
    std::size_t size() const;
    /// Entry counts per arrangement hash.
    std::map<std::string, std::size_t> summary() const;
    /// Removes the file and forgets all entries.
    void clear();

private:
    std::filesystem::path file_;
    mutable std::mutex mu_;
    std::unordered_map<std::string, ExponentResult> entries_;
    std::map<std::string, std::size_t> per_hash_;
};

} // namespace mlat

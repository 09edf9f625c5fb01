#include "mlat/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace mlat {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(Errc::ParseError, what); }

const json& member(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        parse_error(std::string("missing field '") + key + "'");
    return j.at(key);
}

mpq_class rational_from_json(const json& j)
{
    if (j.is_number_integer())
        return mpq_class(std::to_string(j.get<long long>()));
    if (j.is_string())
        return Scalar::parse_rational(j.get<std::string>()).rational_part();
    parse_error("expected a rational as \"p/q\" or an integer, got " + j.dump());
}

} // namespace

json scalar_to_json(const Scalar& s)
{
    if (s.is_rational())
        return s.rational_part().get_str();
    return json{{"a", s.rational_part().get_str()}, {"b", s.irrational_part().get_str()}};
}

Scalar scalar_from_json(const json& j, const FieldSpec& field)
{
    if (j.is_object()) {
        mpq_class a = rational_from_json(member(j, "a"));
        mpq_class b = rational_from_json(member(j, "b"));
        if (b == 0)
            return Scalar(a);
        if (field.kind != FieldSpec::Kind::Quadratic)
            throw Error(Errc::FieldMismatch, "irrational coefficient " + j.dump() + " in field " + to_string(field));
        return Scalar(a, b, field.d);
    }
    return Scalar(rational_from_json(j));
}

json field_to_json(const FieldSpec& f)
{
    switch (f.kind) {
    case FieldSpec::Kind::Rational: return json{{"type", "rational"}};
    case FieldSpec::Kind::Quadratic: return json{{"type", "quadratic"}, {"d", f.d}};
    case FieldSpec::Kind::Prime: return json{{"type", "prime"}, {"p", f.p}};
    }
    return {};
}

FieldSpec field_from_json(const json& j)
{
    const auto& type = member(j, "type");
    if (!type.is_string())
        parse_error("field type must be a string");
    const auto t = type.get<std::string>();
    if (t == "rational")
        return FieldSpec::rational();
    if (t == "quadratic") {
        const auto& d = member(j, "d");
        if (!d.is_number_integer())
            parse_error("quadratic field needs an integer 'd'");
        return FieldSpec::quadratic(d.get<long>());
    }
    if (t == "prime") {
        const auto& p = member(j, "p");
        if (!p.is_number_unsigned())
            parse_error("prime field needs a positive integer 'p'");
        return FieldSpec::prime(p.get<std::uint64_t>());
    }
    parse_error("unknown field type '" + t + "'");
}

json arrangement_to_json(const Arrangement& arr)
{
    json forms = json::array();
    for (const auto& f : arr.forms())
        forms.push_back(json::array({scalar_to_json(f.a()), scalar_to_json(f.b())}));
    json j{{"version", kFormatVersion}, {"field", field_to_json(arr.field())}, {"forms", forms}};
    if (!arr.names().empty())
        j["names"] = arr.names();
    return j;
}

Arrangement arrangement_from_json(const json& j)
{
    const auto& version = member(j, "version");
    if (!version.is_number_integer() || version.get<int>() != kFormatVersion)
        parse_error("unsupported arrangement file version " + version.dump());
    FieldSpec field = field_from_json(member(j, "field"));
    const auto& forms = member(j, "forms");
    if (!forms.is_array())
        parse_error("'forms' must be an array");
    std::vector<LinearForm> out;
    for (const auto& f : forms) {
        if (!f.is_array() || f.size() != 2)
            parse_error("each form must be a pair [a, b], got " + f.dump());
        out.emplace_back(scalar_from_json(f[0], field), scalar_from_json(f[1], field));
    }
    std::vector<std::string> names;
    if (j.contains("names")) {
        const auto& n = j.at("names");
        if (!n.is_array())
            parse_error("'names' must be an array of strings");
        for (const auto& s : n) {
            if (!s.is_string())
                parse_error("'names' must be an array of strings");
            names.push_back(s.get<std::string>());
        }
    }
    return Arrangement(field, std::move(out), std::move(names));
}

Arrangement parse_arrangement(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        parse_error(e.what());
    }
    return arrangement_from_json(j);
}

std::string dump_arrangement(const Arrangement& arr) { return arrangement_to_json(arr).dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        parse_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(Errc::Usage, "cannot write " + path.string());
    out << text;
}

Arrangement load_arrangement(const std::filesystem::path& path)
{
    try {
        return parse_arrangement(read_file(path));
    } catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

json derivation_to_json(const Derivation& t)
{
    json c = json::array();
    for (const auto& s : t.flat_coeffs())
        c.push_back(scalar_to_json(s));
    return json{{"degree", t.degree()}, {"coeffs", c}};
}

json derivation_report(const Derivation& t)
{
    auto poly = [](const HomogPoly& f) { return f.to_string(); };
    return json{{"degree", t.degree()}, {"P", poly(t.p())}, {"Q", poly(t.q())}, {"text", t.to_string()}};
}

Derivation derivation_from_json(const json& j, const FieldSpec& field)
{
    const int d = member(j, "degree").get<int>();
    const auto& c = member(j, "coeffs");
    if (d < 0)
        return {};
    if (!c.is_array() || c.size() != static_cast<std::size_t>(2 * (d + 1)))
        parse_error("derivation of degree " + std::to_string(d) + " needs " + std::to_string(2 * (d + 1)) +
                    " coefficients");
    std::vector<Scalar> p(static_cast<std::size_t>(d + 1)), q(static_cast<std::size_t>(d + 1));
    for (int i = 0; i <= d; ++i) {
        p[static_cast<std::size_t>(d - i)] = scalar_from_json(c[static_cast<std::size_t>(i)], field);
        q[static_cast<std::size_t>(d - i)] = scalar_from_json(c[static_cast<std::size_t>(d + 1 + i)], field);
    }
    return Derivation::from_coeffs(std::move(p), std::move(q));
}

json multiplicity_to_json(const Multiplicity& m) { return m.entries(); }

Multiplicity multiplicity_from_json(const json& j)
{
    if (!j.is_array())
        parse_error("multiplicity must be an array of naturals");
    std::vector<int> v;
    for (const auto& e : j) {
        if (!e.is_number_integer())
            parse_error("multiplicity entries must be integers");
        v.push_back(e.get<int>());
    }
    return Multiplicity(std::move(v));
}

json scan_to_json(const ScanResult& scan, bool balanced_only)
{
    json rows = json::array();
    for (const auto& r : scan.points()) {
        json row{{"mu", multiplicity_to_json(r.mu)}, {"d1", r.d1}, {"d2", r.d2}, {"delta", r.delta}};
        if (r.estimated)
            row["estimated"] = true;
        rows.push_back(std::move(row));
    }
    return json{{"version", kFormatVersion},
                {"kind", "scan"},
                {"arrangement", arrangement_to_json(scan.arrangement())},
                {"arrangement_hash", scan.arrangement().hash()},
                {"box", scan.box().upper()},
                {"balanced_only", balanced_only},
                {"points", rows}};
}

ScanResult scan_from_json(const json& j)
{
    if (member(j, "version") != kFormatVersion || member(j, "kind") != "scan")
        parse_error("not a version " + std::to_string(kFormatVersion) + " scan file");
    Arrangement arr = arrangement_from_json(member(j, "arrangement"));
    if (j.contains("arrangement_hash") && j.at("arrangement_hash") != arr.hash())
        parse_error("arrangement hash does not match the embedded arrangement");
    std::vector<int> upper;
    for (const auto& b : member(j, "box"))
        upper.push_back(b.get<int>());
    Box box(std::move(upper));
    std::vector<PointRecord> pts;
    for (const auto& row : member(j, "points")) {
        PointRecord r;
        r.mu = multiplicity_from_json(member(row, "mu"));
        r.d1 = member(row, "d1").get<int>();
        r.d2 = member(row, "d2").get<int>();
        r.delta = member(row, "delta").get<int>();
        r.estimated = row.value("estimated", false);
        pts.push_back(std::move(r));
    }
    return ScanResult(std::move(arr), std::move(box), std::move(pts));
}

std::string dump_scan(const ScanResult& scan, bool balanced_only)
{
    // One row per line keeps large scans diffable.
    json j = scan_to_json(scan, balanced_only);
    json rows = std::move(j["points"]);
    j.erase("points");
    std::string head = j.dump(2);
    while (!head.empty() && (head.back() == '}' || head.back() == '\n'))
        head.pop_back();
    std::string out = head + ",\n  \"points\": [";
    for (std::size_t i = 0; i < rows.size(); ++i)
        out += (i ? ",\n    " : "\n    ") + rows[i].dump();
    out += rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
}

json components_to_json(const ScanResult& scan, const ComponentIndex& index)
{
    json comps = json::array();
    for (const auto& c : index.components) {
        json jc{{"id", c.id}, {"kind", to_string(c.kind)}, {"size", c.members.size()}};
        if (c.cone_line)
            jc["cone_line"] = *c.cone_line;
        if (c.center) {
            jc["center"] = multiplicity_to_json(*c.center);
            jc["radius"] = c.radius;
        }
        json maxes = json::array();
        for (const auto& m : c.maximizers)
            maxes.push_back(multiplicity_to_json(m));
        jc["maximizers"] = maxes;
        jc["certificate"] = c.certificate;
        comps.push_back(std::move(jc));
    }
    json centers_json = json::array();
    for (const auto& rep : centers(scan, index)) {
        json e{{"component", rep.component}, {"center", multiplicity_to_json(rep.center)}, {"delta", rep.delta}};
        if (!rep.error.empty())
            e["error"] = rep.error;
        centers_json.push_back(std::move(e));
    }
    return json{{"version", kFormatVersion},
                {"kind", "components"},
                {"arrangement_hash", scan.arrangement().hash()},
                {"box", scan.box().upper()},
                {"components", comps},
                {"centers", centers_json}};
}

std::string components_dot(const ScanResult& scan, const ComponentIndex& index)
{
    static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    const Box& box = scan.box();
    std::ostringstream out;
    out << "graph support {\n  node [style=filled, fontname=\"monospace\"];\n";
    auto node_id = [&](const Multiplicity& m) { return "p" + std::to_string(box.index_of(m)); };
    for (const auto& c : index.components) {
        const char* color = palette[static_cast<std::size_t>(c.id) % std::size(palette)];
        for (const auto& m : c.members) {
            const bool is_center = c.center && *c.center == m;
            out << "  " << node_id(m) << " [label=\"" << m.to_string() << "\\n" << scan.delta(m)
                << "\", fillcolor=\"" << color << "\"";
            if (is_center)
                out << ", shape=doublecircle";
            out << "];\n";
        }
    }
    for (const auto& c : index.components) {
        for (const auto& m : c.members) {
            for (std::size_t h = 0; h < m.dim(); ++h) {
                if (m[h] >= box.upper()[h])
                    continue;
                auto up = m.shifted(h, 1);
                if (scan.delta(up) > 0)
                    out << "  " << node_id(m) << " -- " << node_id(up) << ";\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

std::string components_csv(const ScanResult& scan, const ComponentIndex& index)
{
    std::ostringstream out;
    out << "mu,d1,d2,delta,component,classification\n";
    for (std::size_t i = 0; i < scan.points().size(); ++i) {
        const auto& r = scan.points()[i];
        auto cls = classify_point(r.mu);
        out << '"' << r.mu.to_string() << "\"," << r.d1 << ',' << r.d2 << ',' << r.delta << ','
            << index.component_of[i] << ',' << (cls.balanced() ? "balanced" : "cone:" + std::to_string(*cls.cone_line))
            << '\n';
    }
    return out.str();
}

json verdict_to_json(const Verdict& v)
{
    return json{{"check", v.check},     {"property", v.property}, {"status", to_string(v.status)},
                {"reason", v.reason},   {"cases", v.cases},       {"witnesses", v.witnesses}};
}

json report_to_json(const std::vector<Verdict>& verdicts)
{
    json list = json::array();
    for (const auto& v : verdicts)
        list.push_back(verdict_to_json(v));
    return json{{"version", kFormatVersion}, {"status", to_string(aggregate(verdicts))}, {"verdicts", list}};
}

// ---------------------------------------------------------------------------

namespace {

std::string cache_key(const std::string& hash, const Multiplicity& mu) { return hash + "|" + mu.to_string(); }

} // namespace

JsonlCache::JsonlCache(std::filesystem::path dir)
{
    std::filesystem::create_directories(dir);
    file_ = dir / ("exponents-v" + std::to_string(kFormatVersion) + ".jsonl");
    std::ifstream in(file_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        try {
            auto j = json::parse(line);
            if (j.value("v", 0) != kFormatVersion)
                continue;
            const long d = j.value("field_d", 0L);
            const FieldSpec field = d ? FieldSpec::quadratic(d) : FieldSpec::rational();
            ExponentResult r;
            r.d1 = j.at("d1").get<int>();
            r.d2 = j.at("d2").get<int>();
            r.delta = j.at("delta").get<int>();
            r.non_unique = j.at("non_unique").get<bool>();
            r.theta_min = derivation_from_json(j.at("theta"), field);
            const auto hash = j.at("arr").get<std::string>();
            auto mu = multiplicity_from_json(j.at("mu"));
            if (entries_.insert_or_assign(cache_key(hash, mu), std::move(r)).second)
                ++per_hash_[hash];
        } catch (const std::exception&) {
            // A torn last line from an interrupted run is dropped.
        }
    }
}

std::filesystem::path JsonlCache::default_dir()
{
    if (const char* d = std::getenv("ML_CACHE_DIR"); d && *d)
        return d;
    if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x)
        return std::filesystem::path(x) / "ml";
    if (const char* h = std::getenv("HOME"); h && *h)
        return std::filesystem::path(h) / ".cache" / "ml";
    return ".ml-cache";
}

std::optional<ExponentResult> JsonlCache::find(const std::string& arrangement_hash, const Multiplicity& mu)
{
    std::lock_guard lock(mu_);
    auto it = entries_.find(cache_key(arrangement_hash, mu));
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

void JsonlCache::put(const std::string& arrangement_hash, const Multiplicity& mu, const ExponentResult& r)
{
    long d = 0;
    for (const auto& c : r.theta_min.flat_coeffs()) {
        if (!c.is_rational())
            d = c.radicand();
    }
    json j{{"v", kFormatVersion},
           {"arr", arrangement_hash},
           {"mu", multiplicity_to_json(mu)},
           {"d1", r.d1},
           {"d2", r.d2},
           {"delta", r.delta},
           {"non_unique", r.non_unique},
           {"field_d", d},
           {"theta", derivation_to_json(r.theta_min)}};
    std::lock_guard lock(mu_);
    if (!entries_.insert_or_assign(cache_key(arrangement_hash, mu), r).second)
        return;
    ++per_hash_[arrangement_hash];
    std::ofstream out(file_, std::ios::app);
    out << j.dump() << '\n';
}

std::size_t JsonlCache::size() const
{
    std::lock_guard lock(mu_);
    return entries_.size();
}

std::map<std::string, std::size_t> JsonlCache::summary() const
{
    std::lock_guard lock(mu_);
    return per_hash_;
}

void JsonlCache::clear()
{
    std::lock_guard lock(mu_);
    std::filesystem::remove(file_);
    entries_.clear();
    per_hash_.clear();
}

} // namespace mlat

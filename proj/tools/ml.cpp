// ml: exponents, scans and structure checks for 2-multiarrangements.

#include "mlat/coxeter.hpp"
#include "mlat/io.hpp"
#include "mlat/parallel.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <memory>

using namespace mlat;

namespace {

struct Global {
    unsigned jobs = 1;
    bool no_cache = false;
    std::string cache_dir;
};

std::vector<int> parse_ints(const std::string& text, bool allow_negative)
{
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto next = text.find(',', pos);
        auto tok = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (tok.empty() || used != tok.size() || (!allow_negative && v < 0))
            throw Error(Errc::Usage, "bad entry '" + tok + "' in '" + text + "'");
        out.push_back(v);
        if (next == std::string::npos)
            break;
        pos = next + 1;
    }
    return out;
}

Box parse_box(const std::string& text, std::size_t n)
{
    auto v = parse_ints(text, false);
    if (v.size() == 1 && n > 1)
        v.assign(n, v.front());
    if (v.size() != n)
        throw Error(Errc::Usage, "box '" + text + "' needs " + std::to_string(n) + " entries");
    return Box(std::move(v));
}

Multiplicity parse_mu(const std::string& text, std::size_t n)
{
    Multiplicity m(parse_ints(text, false));
    if (m.dim() != n)
        throw Error(Errc::Usage, "multiplicity '" + text + "' needs " + std::to_string(n) + " entries");
    return m;
}

class Context {
public:
    explicit Context(const Global& g) : g_(g)
    {
        if (!g.no_cache)
            cache_ = std::make_unique<JsonlCache>(g.cache_dir.empty() ? JsonlCache::default_dir()
                                                                       : std::filesystem::path(g.cache_dir));
    }

    Solver solver(const Arrangement& arr) const { return Solver(arr, cache_.get()); }
    JsonlCache* cache() const { return cache_.get(); }
    unsigned jobs() const { return g_.jobs; }

private:
    const Global& g_;
    std::unique_ptr<JsonlCache> cache_;
};

void emit(const json& j, const std::string& path)
{
    if (path.empty() || path == "-")
        std::cout << j.dump(2) << "\n";
    else
        write_file(path, j.dump(2) + "\n");
}

json exponents_json(const Multiplicity& mu, const ExponentResult& r)
{
    return json{{"mu", multiplicity_to_json(mu)}, {"d1", r.d1}, {"d2", r.d2}, {"delta", r.delta}};
}

json basis_json(const BasisResult& b)
{
    return json{{"mu", multiplicity_to_json(b.mu)},
                {"nu", multiplicity_to_json(b.nu)},
                {"alpha_mu", b.alpha_mu.to_string()},
                {"alpha_nu", b.alpha_nu.to_string()},
                {"basis", json::array({derivation_report(b.first), derivation_report(b.second)})},
                {"saito", b.saito ? "accept" : "reject"}};
}

int status_code(const std::vector<Verdict>& vs) { return aggregate(vs) == Status::Fail ? 1 : 0; }

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exponents and the multiplicity lattice of 2-multiarrangements"};
    app.require_subcommand(1);
    app.fallthrough();
    Global g;
    app.add_option("-j,--jobs", g.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_flag("--no-cache", g.no_cache, "do not read or write the result cache");
    app.add_option("--cache-dir", g.cache_dir, "cache directory (default $ML_CACHE_DIR)");

    std::string arr_path, mu_text, box_text, out_path, in_path, dot_path, csv_path, window_text;
    std::string nu_text, kappa_text, type_text = "B2", offset_text, center_text;
    bool want_basis = false, balanced_only = false, all_offsets = false, signed_offsets = false;
    bool certify = false, printed_peak = false, as_json = false;
    int k = 0, max_offset_sum = -1, max_box = -1;
    std::vector<std::string> suites;

    auto* c_exp = app.add_subcommand("exponents", "exponents (d1, d2) of D(A, mu)");
    c_exp->add_option("-a,--arrangement", arr_path, "arrangement file")->required();
    c_exp->add_option("-m,--mu", mu_text, "multiplicity, e.g. 1,1,1,1")->required();
    c_exp->add_flag("--basis", want_basis, "include the minimal generator and a full basis");

    auto* c_basis = app.add_subcommand("basis", "a homogeneous basis of D(A, mu) with its Saito check");
    c_basis->add_option("-a,--arrangement", arr_path)->required();
    c_basis->add_option("-m,--mu", mu_text)->required();

    auto* c_scan = app.add_subcommand("scan", "delta over a box");
    c_scan->add_option("-a,--arrangement", arr_path)->required();
    c_scan->add_option("--box", box_text, "upper corner, e.g. 5,5,5,5 or 5")->required();
    c_scan->add_option("-o,--output", out_path, "output file (default stdout)");
    c_scan->add_flag("--balanced-only", balanced_only, "estimate cone points instead of solving them");

    auto* c_comp = app.add_subcommand("components", "components of the support in a scan");
    c_comp->add_option("-i,--input", in_path, "scan file")->required();
    c_comp->add_option("-o,--output", out_path);
    c_comp->add_option("--dot", dot_path, "write a DOT graph");
    c_comp->add_option("--csv", csv_path, "write a CSV table");

    auto* c_verify = app.add_subcommand("verify", "structure checks on a scan");
    c_verify->add_option("-a,--arrangement", arr_path);
    c_verify->add_option("--box", box_text);
    c_verify->add_option("-i,--input", in_path, "existing scan instead of -a/--box");
    c_verify->add_option("--suite", suites, "covering|ball|independence|saito|criteria|all")
        ->check(CLI::IsMember({"covering", "ball", "independence", "saito", "criteria", "all"}));
    c_verify->add_option("--window", window_text, "window for saito/criteria (default: box minus 2)");
    c_verify->add_option("--center", center_text, "check the ball around one point by direct solving");
    c_verify->add_option("-o,--output", out_path);

    auto* c_between = app.add_subcommand("basis-between", "basis of D(A, kappa) from two support points");
    c_between->add_option("-a,--arrangement", arr_path)->required();
    c_between->add_option("--mu", mu_text)->required();
    c_between->add_option("--nu", nu_text)->required();
    c_between->add_option("--kappa", kappa_text)->required();

    auto* c_for = app.add_subcommand("basis-for", "basis of D(A, kappa) from the centers of a scan");
    c_for->add_option("-a,--arrangement", arr_path)->required();
    c_for->add_option("--kappa", kappa_text)->required();
    c_for->add_option("--max-box", max_box, "largest cube to scan for centers (default max(kappa) + 4)");

    auto* c_cox = app.add_subcommand("coxeter", "near-constant exponents of Coxeter arrangements");
    c_cox->add_option("--type", type_text, "A1A1|A2|B2|G2");
    c_cox->add_option("--k", k, "constant multiplicity 2k+1")->check(CLI::NonNegativeNumber);
    c_cox->add_option("--offset", offset_text, "signed offset, e.g. 1,-1,0,0");
    c_cox->add_flag("--all-offsets", all_offsets, "enumerate all offsets");
    c_cox->add_option("--max-offset-sum", max_offset_sum, "bound on sum |i_H| (default |A| - 1)");
    c_cox->add_flag("--signed", signed_offsets, "include negative offsets");
    c_cox->add_flag("--certify", certify, "certify 2k+1 as a center from 2k+2 and 2k");
    c_cox->add_flag("--printed-peak-form", printed_peak, "use the printed lower inequality");
    c_cox->add_flag("--json", as_json, "JSON output");

    auto* c_cache = app.add_subcommand("cache", "inspect or clear the result cache");
    auto* c_inspect = c_cache->add_subcommand("inspect", "entry counts per arrangement");
    auto* c_clear = c_cache->add_subcommand("clear", "delete the cache file");
    c_cache->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        Context ctx(g);
        if (*c_exp) {
            auto arr = load_arrangement(arr_path);
            auto solver = ctx.solver(arr);
            auto mu = parse_mu(mu_text, arr.size());
            auto r = solver.exponents(mu);
            json j = exponents_json(mu, r);
            if (want_basis) {
                j["theta"] = derivation_report(r.theta_min);
                j["theta_unique"] = !r.non_unique;
                auto [a, b] = full_basis(arr, mu);
                j["basis"] = json::array({derivation_report(a), derivation_report(b)});
            }
            emit(j, "");
            return 0;
        }
        if (*c_basis) {
            auto arr = load_arrangement(arr_path);
            auto mu = parse_mu(mu_text, arr.size());
            auto [a, b] = full_basis(arr, mu);
            auto s = verify_saito(arr, mu, a, b);
            json j{{"mu", multiplicity_to_json(mu)},
                   {"basis", json::array({derivation_report(a), derivation_report(b)})},
                   {"saito", s ? "accept" : "reject"}};
            if (!s)
                j["failed"] = to_string(s.failed) + ": " + s.detail;
            emit(j, "");
            return s ? 0 : 1;
        }
        if (*c_scan) {
            auto arr = load_arrangement(arr_path);
            auto solver = ctx.solver(arr);
            auto box = parse_box(box_text, arr.size());
            auto result = scan(solver, box, {ctx.jobs(), balanced_only});
            auto text = dump_scan(result, balanced_only);
            if (out_path.empty() || out_path == "-")
                std::cout << text;
            else
                write_file(out_path, text);
            std::cerr << box.point_count() << " points in " << result.seconds << " s on " << ctx.jobs()
                      << " worker(s)\n";
            return 0;
        }
        if (*c_comp) {
            auto sc = scan_from_json(json::parse(read_file(in_path)));
            auto idx = components(sc);
            if (!dot_path.empty())
                write_file(dot_path, components_dot(sc, idx));
            if (!csv_path.empty())
                write_file(csv_path, components_csv(sc, idx));
            emit(components_to_json(sc, idx), out_path);
            return 0;
        }
        if (*c_verify) {
            std::optional<ScanResult> sc;
            if (!in_path.empty()) {
                sc = scan_from_json(json::parse(read_file(in_path)));
            } else {
                if (arr_path.empty() || (box_text.empty() && center_text.empty()))
                    throw Error(Errc::Usage, "verify needs -i SCAN or -a FILE with --box or --center");
            }
            const Arrangement arr = sc ? sc->arrangement() : load_arrangement(arr_path);
            auto solver = ctx.solver(arr);
            std::vector<Verdict> verdicts;
            if (!center_text.empty())
                verdicts.push_back(verify_ball_locally(solver, parse_mu(center_text, arr.size()), ctx.jobs()));
            if (!sc && !box_text.empty())
                sc = scan(solver, parse_box(box_text, arr.size()), {ctx.jobs(), false});
            if (sc) {
                if (suites.empty())
                    suites.push_back("all");
                auto has = [&](const char* s) {
                    return std::find(suites.begin(), suites.end(), s) != suites.end() ||
                           std::find(suites.begin(), suites.end(), "all") != suites.end();
                };
                auto idx = components(*sc);
                std::vector<int> w;
                for (int u : sc->box().upper())
                    w.push_back(std::max(u - 2, 0));
                Box window = window_text.empty() ? Box(w) : parse_box(window_text, arr.size());
                if (has("covering"))
                    verdicts.push_back(check_covering_steps(*sc));
                if (has("ball")) {
                    verdicts.push_back(check_ball_structure(*sc, idx));
                    verdicts.push_back(check_sections(*sc, idx));
                }
                if (has("independence")) {
                    verdicts.push_back(check_independency(*sc, idx, solver));
                    verdicts.push_back(check_basis_step_and_path(*sc, idx, solver));
                }
                if (has("saito"))
                    verdicts.push_back(check_saito_bases(solver, *sc, idx, window, ctx.jobs()));
                if (has("criteria"))
                    for (auto& v : check_criteria(solver, *sc, idx, window))
                        verdicts.push_back(std::move(v));
            }
            for (const auto& v : verdicts)
                std::cerr << to_string(v.status) << "  " << v.check << ": " << v.reason << "\n";
            emit(report_to_json(verdicts), out_path);
            return status_code(verdicts);
        }
        if (*c_between) {
            auto arr = load_arrangement(arr_path);
            auto solver = ctx.solver(arr);
            auto mu = parse_mu(mu_text, arr.size());
            auto nu = parse_mu(nu_text, arr.size());
            auto kappa = parse_mu(kappa_text, arr.size());
            auto b = construct_basis_between(solver, mu, nu, kappa, solver.theta(mu), solver.theta(nu));
            json j = basis_json(b);
            j["kappa"] = multiplicity_to_json(kappa);
            emit(j, "");
            return 0;
        }
        if (*c_for) {
            auto arr = load_arrangement(arr_path);
            auto solver = ctx.solver(arr);
            auto kappa = parse_mu(kappa_text, arr.size());
            const int lo = kappa.max_entry() + 2;
            const int hi = max_box < 0 ? kappa.max_entry() + 4 : max_box;
            for (int b = lo; b <= std::max(lo, hi); ++b) {
                auto sc = scan(solver, Box::cube(arr.size(), b), {ctx.jobs(), false});
                auto idx = components(sc);
                auto support = support_index(sc, idx);
                try {
                    auto res = basis_for(solver, kappa, center_index(sc, idx), &support);
                    json j = basis_json(res);
                    j["kappa"] = multiplicity_to_json(kappa);
                    j["scan_box"] = b;
                    emit(j, "");
                    return 0;
                } catch (const Error& e) {
                    if (e.code() != Errc::NoCenterPairFound || b >= hi)
                        throw;
                }
            }
            return 1;
        }
        if (*c_cox) {
            auto type = parse_coxeter_type(type_text);
            auto arr = coxeter_arrangement(CoxeterSpec::standard(type));
            auto solver = ctx.solver(arr);
            std::vector<Verdict> verdicts;
            json rows = json::array();
            if (certify) {
                auto gens = weyl_generators(type, arr);
                const int n = static_cast<int>(arr.size());
                auto v = symmetric_peak_certificate(solver, gens, Multiplicity::constant(n, 2 * k + 1),
                                                    Multiplicity::constant(n, 2 * k + 2),
                                                    Multiplicity::constant(n, 2 * k), {printed_peak, ctx.jobs()});
                if (!as_json)
                    std::cout << to_string(v.status) << "  " << v.reason << "\n";
                verdicts.push_back(std::move(v));
            }
            std::vector<std::vector<int>> offsets;
            if (!offset_text.empty())
                offsets.push_back(parse_ints(offset_text, true));
            if (all_offsets) {
                const int s = max_offset_sum < 0 ? static_cast<int>(arr.size()) - 1 : max_offset_sum;
                for (auto& o : offsets_up_to(arr.size(), s, signed_offsets)) {
                    bool valid = true;
                    for (int x : o)
                        valid = valid && 2 * k + 1 + x >= 0;
                    if (valid)
                        offsets.push_back(std::move(o));
                }
            }
            if (offsets.empty() && !certify)
                offsets.push_back(std::vector<int>(arr.size(), 0));
            std::vector<std::optional<NearConstantResult>> results(offsets.size());
            std::vector<std::string> errors(offsets.size());
            parallel_for(offsets.size(), ctx.jobs(), [&](std::size_t i) {
                try {
                    results[i] = near_constant_exponents(solver, type, k, offsets[i]);
                } catch (const Error& e) {
                    errors[i] = e.what();
                }
            });
            if (!as_json && !offsets.empty())
                std::cout << "offset\tnu\tpredicted\tprinted\tcomputed\tresult\n";
            for (std::size_t i = 0; i < offsets.size(); ++i) {
                if (!errors[i].empty()) {
                    if (offsets.size() == 1)
                        throw Error(Errc::Usage, errors[i]);
                    continue;
                }
                const auto& r = *results[i];
                auto pr = [](std::pair<int, int> p) {
                    return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
                };
                std::string off;
                for (int x : offsets[i])
                    off += (off.empty() ? "" : ",") + std::to_string(x);
                if (as_json) {
                    rows.push_back(json{{"offset", offsets[i]},
                                        {"nu", multiplicity_to_json(r.nu)},
                                        {"predicted", {r.predicted.first, r.predicted.second}},
                                        {"printed", {r.printed.first, r.printed.second}},
                                        {"printed_matches", r.printed_matches},
                                        {"computed", {r.computed.first, r.computed.second}},
                                        {"status", to_string(r.verdict.status)}});
                } else {
                    std::cout << off << '\t' << r.nu.to_string() << '\t' << pr(r.predicted) << '\t' << pr(r.printed)
                              << (r.printed_matches ? "" : "*") << '\t' << pr(r.computed) << '\t'
                              << (r.verdict.passed() ? "Match" : "MISMATCH") << '\n';
                }
                verdicts.push_back(r.verdict);
            }
            if (as_json) {
                json j = report_to_json(verdicts);
                j["type"] = to_string(type);
                j["k"] = k;
                j["rows"] = rows;
                emit(j, "");
            }
            return status_code(verdicts);
        }
        if (*c_cache) {
            auto* cache = ctx.cache();
            if (!cache)
                throw Error(Errc::Usage, "cache commands conflict with --no-cache");
            if (*c_inspect) {
                json per = json::object();
                for (const auto& [h, n] : cache->summary())
                    per[h] = n;
                emit(json{{"file", cache->file().string()}, {"entries", cache->size()}, {"arrangements", per}}, "");
            } else if (*c_clear) {
                cache->clear();
                std::cerr << "cleared " << cache->file().string() << "\n";
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "ml: " << e.what() << "\n";
        switch (e.code()) {
        case Errc::VerificationFailed:
        case Errc::InternalInconsistency:
        case Errc::NotUnimodal:
            return 1;
        default:
            return 2;
        }
    } catch (const json::exception& e) {
        std::cerr << "ml: ParseError: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ml: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

#include "ffx/cli.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace ffx::cli {

namespace {

using nlohmann::json;

std::string g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string g6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    mpz_class z(static_cast<long>(p));
    return mpz_probab_prime_p(z.get_mpz_t(), 30) != 0;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

json estimate_json(const Estimate& e) {
    return json{{"value", e.value}, {"halfwidth99", e.halfwidth99}};
}

json fraction_json(const Fraction& f, bool unique) {
    return json{{"num", f.num.get_str()}, {"den", f.den.get_str()}, {"unique", unique}};
}

json bigvec_json(const std::vector<BigInt>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

std::string format_name(Format f) {
    switch (f) {
        case Format::table: return "table";
        case Format::json: return "json";
        case Format::csv: return "csv";
    }
    return "?";
}

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_primes(const std::vector<std::int64_t>& primes, std::size_t at_least) {
    if (primes.size() < at_least)
        throw input_error("need at least " + std::to_string(at_least) + " primes");
    std::set<std::int64_t> seen;
    for (auto p : primes) {
        if (!is_prime(p)) throw input_error(std::to_string(p) + " is not prime");
        if (!seen.insert(p).second)
            throw input_error("prime " + std::to_string(p) + " repeated");
    }
}

// wraps a report builder with the shared error-to-exit-code policy
template <typename Fn>
CommandResult guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const input_error& e) {
        return {kExitInput, "", std::string("error: ") + e.what() + "\n"};
    } catch (const parse_error& e) {
        return {kExitInput, "", std::string("error: ") + e.what() + "\n"};
    } catch (const budget_exceeded_error& e) {
        return {kExitInput, "", std::string("error: ") + e.what() + "\n"};
    } catch (const std::invalid_argument& e) {
        return {kExitInput, "", std::string("error: ") + e.what() + "\n"};
    } catch (const std::out_of_range& e) {
        return {kExitInput, "", std::string("error: ") + e.what() + "\n"};
    } catch (const std::exception& e) {
        return {kExitRuntime, "", std::string("error: ") + e.what() + "\n"};
    }
}

}  // namespace

SystemFile parse_system_text(const std::string& text) {
    SystemFile out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool have_vars = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (!have_vars) {
            if (t.rfind("vars:", 0) != 0)
                throw parse_error("line " + std::to_string(lineno) +
                                      ": expected 'vars:' header",
                                  0);
            std::istringstream names(t.substr(5));
            std::string name;
            while (std::getline(names, name, ',')) {
                name = trim(name);
                if (!valid_identifier(name))
                    throw parse_error("line " + std::to_string(lineno) +
                                          ": bad variable name '" + name + "'",
                                      0);
                out.vars.push_back(name);
            }
            if (out.vars.empty())
                throw parse_error("line " + std::to_string(lineno) + ": no variables", 0);
            have_vars = true;
            continue;
        }
        try {
            out.system.polys.push_back(parse(t, out.vars));
        } catch (const parse_error& e) {
            // the ctor appends " (at position N)"; drop the inner copy
            std::string msg = e.what();
            const std::string suffix = " (at position " + std::to_string(e.position) + ")";
            if (msg.size() >= suffix.size() &&
                msg.compare(msg.size() - suffix.size(), suffix.size(), suffix) == 0)
                msg.erase(msg.size() - suffix.size());
            throw parse_error("line " + std::to_string(lineno) + ": " + msg, e.position);
        }
        out.sources.push_back(t);
    }
    if (!have_vars) throw parse_error("missing 'vars:' header", 0);
    if (out.system.polys.empty()) throw parse_error("no polynomials", 0);
    out.system.nvars = out.vars.size();
    return out;
}

SystemFile load_system_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system_text(buf.str());
}

CommandResult cmd_scan(const ScanArgs& args) {
    return guarded([&]() -> CommandResult {
        if (!is_prime(args.p)) throw input_error(std::to_string(args.p) + " is not prime");
        if (args.trials == 0) throw input_error("trials must be >= 1");
        SystemFile sf = load_system_file(args.system_path);
        const bool hypersurface = sf.system.size() == 1;
        if (args.values && !hypersurface)
            throw input_error("--values needs a single-polynomial system");

        SampleConfig cfg{args.p, args.trials, args.seed, args.workers};
        ScanOptions opts{args.ranks, args.values};
        ScanReport rep = run_scan(MembershipPredicate::vanishing(sf.system), cfg, opts);
        double gamma = static_cast<double>(rep.hits) / static_cast<double>(args.trials);

        json j;
        j["schema"] = 1;
        j["command"] = "scan";
        j["config"] = {{"system", args.system_path}, {"p", args.p},
                       {"trials", args.trials},      {"seed", args.seed},
                       {"workers", args.workers},    {"ranks", args.ranks},
                       {"values", args.values},      {"format", format_name(args.format)}};
        json& r = j["result"];
        r["nvars"] = sf.system.nvars;
        r["hits"] = rep.hits;
        r["trials"] = args.trials;
        r["gamma_hat"] = gamma;
        std::map<std::size_t, Estimate> estimates;
        if (hypersurface)
            r["verdict"] = to_string(classify_factors(
                rep.hits, args.trials, args.p, static_cast<unsigned>(sf.system.nvars)));
        if (args.values) {
            json tally = json::object();
            for (const auto& [v, c] : rep.value_tally) tally[std::to_string(v)] = c;
            r["value_tally"] = tally;
        }
        if (args.ranks) {
            json tally = json::object();
            for (const auto& [rk, c] : rep.rank_tally) tally[std::to_string(rk)] = c;
            r["rank_tally"] = tally;
            estimates = codim_component_estimate(rep.rank_tally, args.p, args.trials);
            json est = json::object();
            for (const auto& [c, e] : estimates) est[std::to_string(c)] = estimate_json(e);
            r["codim_estimates"] = est;
        }

        CommandResult res;
        if (args.format == Format::json) {
            res.out = j.dump(2) + "\n";
        } else if (args.format == Format::csv) {
            std::string s = "section,key,count,value,halfwidth99\n";
            s += "hits,," + std::to_string(rep.hits) + "," + g17(gamma) + ",\n";
            for (const auto& [v, c] : rep.value_tally)
                s += "value," + std::to_string(v) + "," + std::to_string(c) + ",,\n";
            for (const auto& [rk, c] : rep.rank_tally) {
                const auto& e = estimates.at(rk);
                s += "rank," + std::to_string(rk) + "," + std::to_string(c) + "," +
                     g17(e.value) + "," + g17(e.halfwidth99) + "\n";
            }
            res.out = s;
        } else {
            std::string s = "scan " + args.system_path + "  p=" + std::to_string(args.p) +
                            " trials=" + std::to_string(args.trials) +
                            " seed=" + std::to_string(args.seed) + "\n";
            s += "hits " + std::to_string(rep.hits) + " of " + std::to_string(args.trials) +
                 "  gamma_hat " + g6(gamma) + "\n";
            if (j["result"].contains("verdict"))
                s += "verdict " + j["result"]["verdict"].get<std::string>() + "\n";
            if (args.values) {
                s += "value tally:\n";
                for (const auto& [v, c] : rep.value_tally)
                    s += "  " + std::to_string(v) + ": " + std::to_string(c) + "\n";
            }
            if (args.ranks) {
                s += "rank tally (components per codimension):\n";
                for (const auto& [rk, c] : rep.rank_tally) {
                    const auto& e = estimates.at(rk);
                    s += "  " + std::to_string(rk) + ": " + std::to_string(c) + "  -> " +
                         g6(e.value) + " +/- " + g6(e.halfwidth99) + "\n";
                }
            }
            res.out = s;
        }
        return res;
    });
}

namespace {

SymmetricRankSpec parse_symrank(const std::string& spec) {
    // symrank:<dim>:<maxrank>
    if (spec.rfind("symrank:", 0) != 0)
        throw input_error("unknown predicate '" + spec + "' (expected symrank:<dim>:<maxrank>)");
    std::string rest = spec.substr(8);
    std::size_t colon = rest.find(':');
    if (colon == std::string::npos)
        throw input_error("predicate '" + spec + "' missing max rank");
    try {
        std::size_t dim = std::stoul(rest.substr(0, colon));
        std::size_t max_rank = std::stoul(rest.substr(colon + 1));
        if (dim == 0 || max_rank >= dim)
            throw input_error("predicate '" + spec + "' needs 0 <= maxrank < dim");
        return {dim, max_rank};
    } catch (const std::logic_error&) {
        throw input_error("cannot parse predicate '" + spec + "'");
    }
}

}  // namespace

CommandResult cmd_survey(const SurveyArgs& args) {
    return guarded([&]() -> CommandResult {
        if (args.system_path.empty() == args.pred.empty())
            throw input_error("give exactly one of: system file, --pred");
        require_primes(args.primes, 2);
        if (args.k == 0) throw input_error("k must be >= 1");

        PredicateFamily family;
        std::string pred_desc;
        SystemFile sf;
        if (!args.system_path.empty()) {
            sf = load_system_file(args.system_path);
            family = [&sf](std::int64_t) { return MembershipPredicate::vanishing(sf.system); };
            pred_desc = args.system_path;
        } else {
            SymmetricRankSpec spec = parse_symrank(args.pred);
            for (auto p : args.primes)
                if (p == 2) throw input_error("symrank predicates need odd primes");
            family = [spec](std::int64_t) {
                return MembershipPredicate::symmetric_rank_at_most(spec.dim, spec.max_rank);
            };
            pred_desc = args.pred;
        }

        SurveyOutcome oc = multi_prime_survey(family, args.primes, args.k, args.seed, args.cap);

        json j;
        j["schema"] = 1;
        j["command"] = "survey";
        j["config"] = {{"predicate", pred_desc}, {"primes", args.primes},
                       {"k", args.k},            {"seed", args.seed},
                       {"cap", args.cap},        {"format", format_name(args.format)}};
        json& r = j["result"];
        r["observations"] = json::array();
        r["plot"] = json::array();
        for (const auto& o : oc.observations) {
            r["observations"].push_back(
                {{"p", o.p}, {"hits", o.hits}, {"trials", o.trials}});
            double gamma = static_cast<double>(o.hits) / static_cast<double>(o.trials);
            r["plot"].push_back({{"log_inv_p", std::log(1.0 / static_cast<double>(o.p))},
                                 {"log_gamma_hat", std::log(gamma)},
                                 {"p", o.p},
                                 {"hits", o.hits},
                                 {"trials", o.trials}});
        }
        r["failures"] = json::array();
        for (const auto& f : oc.failures)
            r["failures"].push_back({{"p", f.p}, {"trials", f.trials}});
        if (oc.observations.size() >= 2) {
            CodimFit fit = estimate_codim_components(oc.observations);
            r["fit"] = {{"c", fit.c}, {"c_rounded", fit.c_rounded}, {"d", estimate_json(fit.d)}};
        } else {
            r["fit"] = nullptr;
        }

        CommandResult res;
        res.code = oc.observations.empty() ? kExitRuntime : kExitSuccess;
        if (args.format == Format::json) {
            res.out = j.dump(2) + "\n";
        } else if (args.format == Format::csv) {
            std::string s = "log_inv_p,log_gamma_hat,p,hits,trials\n";
            for (const auto& o : oc.observations) {
                double gamma = static_cast<double>(o.hits) / static_cast<double>(o.trials);
                s += g17(std::log(1.0 / static_cast<double>(o.p))) + "," +
                     g17(std::log(gamma)) + "," + std::to_string(o.p) + "," +
                     std::to_string(o.hits) + "," + std::to_string(o.trials) + "\n";
            }
            res.out = s;
        } else {
            std::string s = "survey " + pred_desc + "  k=" + std::to_string(args.k) +
                            " seed=" + std::to_string(args.seed) + "\n";
            for (const auto& o : oc.observations)
                s += "  p=" + std::to_string(o.p) + "  trials " + std::to_string(o.trials) +
                     " for " + std::to_string(o.hits) + " hits\n";
            for (const auto& f : oc.failures)
                s += "  p=" + std::to_string(f.p) + "  gave up after " +
                     std::to_string(f.trials) + " trials\n";
            if (!r["fit"].is_null()) {
                s += "codim " + g6(r["fit"]["c"].get<double>()) + " (rounds to " +
                     std::to_string(r["fit"]["c_rounded"].get<long>()) + "), components " +
                     g6(r["fit"]["d"]["value"].get<double>()) + " +/- " +
                     g6(r["fit"]["d"]["halfwidth99"].get<double>()) + "\n";
            }
            res.out = s;
        }
        return res;
    });
}

namespace {

json trace_json(const LiftTrace& trace) {
    json a = json::array();
    for (const auto& st : trace)
        a.push_back({{"modulus", st.modulus.get_str()}, {"coords", bigvec_json(st.coords)}});
    return a;
}

}  // namespace

CommandResult cmd_solve(const SolveArgs& args) {
    return guarded([&]() -> CommandResult {
        require_primes(args.primes, 1);
        if (args.mode != "crt" && args.mode != "newton")
            throw input_error("mode must be crt or newton");
        if (args.format == Format::csv)
            throw input_error("csv output is not defined for solve");
        SystemFile sf = load_system_file(args.system_path);
        const std::size_t nv = sf.system.nvars;

        json j;
        j["schema"] = 1;
        j["command"] = "solve";
        j["config"] = {{"system", args.system_path}, {"primes", args.primes},
                       {"mode", args.mode},          {"steps", args.steps},
                       {"budget", args.budget},      {"seed", args.seed},
                       {"stable_only", args.stable_only},
                       {"format", format_name(args.format)}};
        json& r = j["result"];

        std::string table;
        bool no_solutions = false;

        if (args.mode == "crt") {
            std::vector<std::vector<std::vector<std::int64_t>>> per_prime;
            per_prime.reserve(args.primes.size());
            for (auto p : args.primes)
                per_prime.push_back(all_points(sf.system, p, args.budget));

            r["per_prime"] = json::array();
            bool any = false;
            std::vector<std::size_t> unique_idx;
            for (std::size_t i = 0; i < args.primes.size(); ++i) {
                json pts = json::array();
                for (const auto& pt : per_prime[i]) pts.push_back(pt);
                r["per_prime"].push_back({{"p", args.primes[i]}, {"points", pts}});
                if (!per_prime[i].empty()) any = true;
                if (per_prime[i].size() == 1) unique_idx.push_back(i);
            }
            json uniq = json::array();
            for (auto i : unique_idx) uniq.push_back(args.primes[i]);
            r["unique_primes"] = uniq;

            table = "solve crt " + args.system_path + "\n";
            for (std::size_t i = 0; i < args.primes.size(); ++i) {
                table += "p=" + std::to_string(args.primes[i]) + ": " +
                         std::to_string(per_prime[i].size()) + " solution(s)\n";
            }

            if (!unique_idx.empty()) {
                std::vector<BigInt> coords(nv);
                BigInt modulus;
                for (std::size_t c = 0; c < nv; ++c) {
                    std::vector<ModularValue> entries;
                    entries.reserve(unique_idx.size());
                    for (auto i : unique_idx)
                        entries.push_back({BigInt(args.primes[i]),
                                           BigInt(per_prime[i][0][c])});
                    ModularValue mv = crt_list(entries);
                    coords[c] = mv.value;
                    modulus = mv.modulus;
                }
                r["candidate"] = {{"modulus", modulus.get_str()}, {"coords", bigvec_json(coords)}};

                std::vector<BigInt> residuals = integer_residuals(sf.system, coords);
                bool int_ok = true;
                for (const auto& x : residuals)
                    if (x != 0) int_ok = false;
                r["integer"] = {{"certified", int_ok}, {"residuals", bigvec_json(residuals)}};

                json rat_coords = json::array();
                std::vector<Fraction> fracs;
                bool all_recovered = true;
                for (std::size_t c = 0; c < nv; ++c) {
                    try {
                        RationalRecovery rec = recover_rational(coords[c], modulus);
                        fracs.push_back(rec.value);
                        rat_coords.push_back(fraction_json(rec.value, rec.unique));
                    } catch (const reconstruction_failed_error&) {
                        all_recovered = false;
                        rat_coords.push_back(nullptr);
                    }
                }
                bool rat_ok = all_recovered && certify_rational_solution(fracs, sf.system);
                r["rational"] = {{"certified", rat_ok}, {"coords", rat_coords}};

                table += "candidate mod " + modulus.get_str() + ": (";
                for (std::size_t c = 0; c < nv; ++c)
                    table += (c ? ", " : "") + coords[c].get_str();
                table += ")\ninteger certified: " + std::string(int_ok ? "yes" : "no") + "\n";
                table += "rational: (";
                for (std::size_t c = 0; c < nv; ++c) {
                    table += c ? ", " : "";
                    table += rat_coords[c].is_null()
                                 ? "?"
                                 : fracs[c].num.get_str() + "/" + fracs[c].den.get_str();
                }
                table += ")\nrational certified: " + std::string(rat_ok ? "yes" : "no") + "\n";
            } else {
                r["candidate"] = nullptr;
                r["integer"] = nullptr;
                r["rational"] = nullptr;
                table += "no prime with a unique solution; nothing to combine\n";
            }
            no_solutions = !any;
        } else {
            if (sf.system.size() != nv)
                throw input_error("newton mode needs a square system");
            r["per_prime"] = json::array();
            bool any_root = false, any_certified = false;
            table = "solve newton " + args.system_path +
                    "  steps=" + std::to_string(args.steps) + "\n";
            for (auto p : args.primes) {
                json roots = json::array();
                for (const auto& pt : all_points(sf.system, p, args.budget)) {
                    any_root = true;
                    json entry;
                    entry["start"] = pt;
                    std::size_t rank = rank_mod_p(jacobian_at(sf.system, pt, p));
                    bool smooth = rank == nv;
                    entry["smooth"] = smooth;
                    table += "p=" + std::to_string(p) + " root (";
                    for (std::size_t c = 0; c < pt.size(); ++c)
                        table += (c ? "," : "") + std::to_string(pt[c]);
                    table += smooth ? ")" : ") [not smooth]";
                    if (smooth) {
                        ResidueVector start;
                        start.modulus = p;
                        for (auto c : pt) start.coords.emplace_back(c);
                        LiftTrace trace = newton_lift(start, sf.system, args.steps);
                        entry["trace"] = trace_json(trace);
                        bool stabilized =
                            trace.size() >= 2 &&
                            trace[trace.size() - 1].coords == trace[trace.size() - 2].coords;
                        entry["stabilized"] = stabilized;
                        if (args.stable_only && !stabilized) {
                            entry["integer"] = nullptr;
                            entry["rational"] = nullptr;
                            table += " -> not stabilized, skipped\n";
                        } else {
                            const auto& last = trace.back();
                            std::vector<BigInt> residuals =
                                integer_residuals(sf.system, last.coords);
                            bool int_ok = true;
                            for (const auto& x : residuals)
                                if (x != 0) int_ok = false;
                            entry["integer"] = {{"candidate", bigvec_json(last.coords)},
                                                {"certified", int_ok},
                                                {"residuals", bigvec_json(residuals)}};
                            bool rat_ok = false;
                            if (int_ok) {
                                entry["rational"] = nullptr;
                            } else {
                                json rat_coords = json::array();
                                std::vector<Fraction> fracs;
                                bool all_recovered = true;
                                for (const auto& c : last.coords) {
                                    try {
                                        RationalRecovery rec =
                                            recover_rational(c, last.modulus);
                                        fracs.push_back(rec.value);
                                        rat_coords.push_back(
                                            fraction_json(rec.value, rec.unique));
                                    } catch (const reconstruction_failed_error&) {
                                        all_recovered = false;
                                        rat_coords.push_back(nullptr);
                                    }
                                }
                                rat_ok = all_recovered &&
                                         certify_rational_solution(fracs, sf.system);
                                entry["rational"] = {{"certified", rat_ok},
                                                     {"coords", rat_coords}};
                            }
                            if (int_ok || rat_ok) any_certified = true;
                            table += std::string(" -> ") +
                                     (int_ok ? "integer solution"
                                             : (rat_ok ? "rational solution"
                                                       : "not certified")) +
                                     " (";
                            for (std::size_t c = 0; c < last.coords.size(); ++c)
                                table += (c ? ", " : "") + last.coords[c].get_str();
                            table += ") mod " + last.modulus.get_str() + "\n";
                        }
                    } else {
                        table += "\n";
                    }
                    roots.push_back(entry);
                }
                r["per_prime"].push_back({{"p", p}, {"roots", roots}});
            }
            r["any_certified"] = any_certified;
            no_solutions = !any_root;
        }

        CommandResult res;
        res.code = no_solutions ? kExitNoSolutions : kExitSuccess;
        if (args.format == Format::json) {
            res.out = j.dump(2) + "\n";
        } else {
            if (no_solutions) table += "no modular solutions\n";
            res.out = table;
        }
        return res;
    });
}

int run_main(int argc, char** argv) {
    CLI::App app{"random point scans and exact lifting for polynomial systems mod p"};
    app.require_subcommand(1);

    std::string fmt_scan = "table", fmt_survey = "table", fmt_solve = "table";
    auto check_fmt = CLI::IsMember({"table", "json", "csv"});

    ScanArgs sa;
    auto* scan = app.add_subcommand("scan", "count hits of a system on random points mod p");
    scan->add_option("system", sa.system_path, "system file")->required();
    scan->add_option("-p,--prime", sa.p, "prime modulus")->required();
    scan->add_option("--trials", sa.trials, "number of sample points")->required();
    scan->add_option("--seed", sa.seed, "PRNG seed");
    scan->add_option("--workers", sa.workers, "worker count (informational)");
    scan->add_flag("--ranks", sa.ranks, "tally Jacobian ranks over hits");
    scan->add_flag("--values", sa.values, "tally balanced values (single polynomial)");
    scan->add_option("--format", fmt_scan, "table|json|csv")->check(check_fmt);

    SurveyArgs va;
    auto* survey = app.add_subcommand("survey", "find-k trials across primes, fit codimension");
    survey->add_option("system", va.system_path, "system file");
    survey->add_option("--pred", va.pred, "built-in predicate, e.g. symrank:4:2");
    survey->add_option("-p,--prime", va.primes, "primes (repeatable)")->required();
    survey->add_option("--k", va.k, "hits to collect per prime");
    survey->add_option("--seed", va.seed, "PRNG seed");
    survey->add_option("--cap", va.cap, "trial cap per prime");
    survey->add_option("--format", fmt_survey, "table|json|csv")->check(check_fmt);

    SolveArgs la;
    auto* solve = app.add_subcommand("solve", "exact solutions by remaindering or lifting");
    solve->add_option("system", la.system_path, "system file")->required();
    solve->add_option("-p,--prime", la.primes, "primes (repeatable)")->required();
    solve->add_option("--mode", la.mode, "crt|newton")->check(CLI::IsMember({"crt", "newton"}));
    solve->add_option("--steps", la.steps, "Newton doubling steps");
    solve->add_option("--budget", la.budget, "enumeration budget per prime");
    solve->add_option("--seed", la.seed, "echoed into the report");
    solve->add_flag("--stable-only", la.stable_only,
                    "only certify traces whose last two states agree");
    solve->add_option("--format", fmt_solve, "table|json")
        ->check(CLI::IsMember({"table", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitSuccess : kExitInput;
    }

    auto to_format = [](const std::string& s) {
        if (s == "json") return Format::json;
        if (s == "csv") return Format::csv;
        return Format::table;
    };

    CommandResult res;
    if (scan->parsed()) {
        sa.format = to_format(fmt_scan);
        res = cmd_scan(sa);
    } else if (survey->parsed()) {
        va.format = to_format(fmt_survey);
        res = cmd_survey(va);
    } else {
        la.format = to_format(fmt_solve);
        res = cmd_solve(la);
    }
    std::fputs(res.out.c_str(), stdout);
    std::fputs(res.err.c_str(), stderr);
    return res.code;
}

}  // namespace ffx::cli

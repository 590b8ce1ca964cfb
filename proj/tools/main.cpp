// uniteq: classify exceptional cyclic fields of prime degree ell and solve
// the unit equation lambda + mu = 1 in their rings of integers.

#include "uniteq/serialize.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <thread>

using namespace uniteq;

namespace {

struct GlobalOpts {
    bool json = false;
    bool csv = false;
    std::uint64_t seed = 0x5eedULL;
    unsigned threads = 0; // 0 = all cores
    long precision = 512;
    std::string cache_dir;
    bool no_cache = false;

    FactorConfig factor_config() const {
        FactorConfig cfg;
        cfg.seed = seed;
        return cfg;
    }

    unsigned thread_count() const {
        if (threads > 0) return threads;
        unsigned hc = std::thread::hardware_concurrency();
        return hc == 0 ? 1 : hc;
    }

    Cache cache() const { return Cache::resolve(cache_dir, no_cache); }
};

std::string int_str(const Int& x) { return x.get_str(); }

std::string set_str(const std::vector<Int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += int_str(v[i]);
    }
    return s + "}";
}

// stable identity of a field for cache keys: conductor + subgroup generators
std::vector<std::string> field_key_parts(const CyclicField& F) {
    std::vector<std::string> parts{int_str(Int(static_cast<long>(F.m))), int_str(F.N)};
    for (const Int& g : F.H.generators) parts.push_back(int_str(g));
    return parts;
}

// ---------------------------------------------------------------------------
// rl / sl / candidates

int cmd_rl(const GlobalOpts& g, long ell) {
    Int rl = compute_Rl(ell); // throws EllIsTwo / EllIsThree with the reason
    Factorization f = try_factorize(rl, g.factor_config());
    if (g.json) {
        json j;
        j["schema"] = "uniteq/rl/v1";
        j["ell"] = ell;
        j["rl"] = int_str(rl);
        j["factorization"] = format_factorization(f);
        j["complete"] = f.complete();
        std::cout << json_dump(j);
    } else {
        std::printf("R_%ld = %s = %s\n", ell, int_str(rl).c_str(),
                    format_factorization(f).c_str());
    }
    return f.complete() ? 0 : 2;
}

int cmd_sl(const GlobalOpts& g, long ell) {
    SlResult sl = compute_Sl(ell, g.factor_config());
    if (g.json) {
        json j;
        j["schema"] = "uniteq/sl/v1";
        j["ell"] = ell;
        j["sl"] = detail::int_list(sl.primes);
        j["complete"] = sl.complete;
        std::cout << json_dump(j);
    } else {
        std::printf("S_%ld = %s\n", ell, set_str(sl.primes).c_str());
        if (!sl.complete)
            std::printf("warning: R_%ld did not factor completely; S_%ld may be missing primes\n",
                        ell, ell);
    }
    return sl.complete ? 0 : 2;
}

int cmd_candidates(const GlobalOpts& g, long ell) {
    CandidateReport rep = candidate_conductors(ell, g.factor_config());
    if (g.json) {
        std::cout << json_dump(candidates_to_json(rep));
    } else if (g.csv) {
        std::printf("subset,conductor,discriminant\n");
        for (const auto& c : rep.candidates)
            std::printf("%s,%s,%s\n", set_str(c.subset).c_str(), int_str(c.conductor).c_str(),
                        int_str(c.discriminant).c_str());
    } else {
        std::printf("candidate conductors for ell = %ld (S_%ld = %s):\n", ell, ell,
                    set_str(rep.sl).c_str());
        std::printf("%-16s %-12s %s\n", "T", "N", "disc");
        for (const auto& c : rep.candidates)
            std::printf("%-16s %-12s %s\n", set_str(c.subset).c_str(),
                        int_str(c.conductor).c_str(), int_str(c.discriminant).c_str());
    }
    return rep.sl_complete ? 0 : 2;
}

// ---------------------------------------------------------------------------
// fields

std::vector<CyclicField> build_fields(const GlobalOpts& g, long ell, long conductor) {
    CandidateReport rep = candidate_conductors(ell, g.factor_config());
    std::vector<CyclicField> out;
    for (const auto& c : rep.candidates) {
        if (conductor > 0 && c.conductor != conductor) continue;
        for (auto& F : subfields_of_conductor(ell, c.conductor)) out.push_back(std::move(F));
    }
    if (conductor > 0 && out.empty())
        throw std::invalid_argument("no candidate conductor " + std::to_string(conductor) +
                                    " for ell = " + std::to_string(ell));
    return out;
}

int cmd_fields(const GlobalOpts& g, long ell, long conductor) {
    std::vector<CyclicField> fields = build_fields(g, ell, conductor);
    Cache cache = g.cache();
    std::vector<json> docs;
    std::vector<std::string> paths;
    for (const CyclicField& F : fields) {
        std::string key = cache_key("field", field_key_parts(F));
        json doc;
        if (auto hit = cache.load(key); hit && hit->value("schema", "") == "uniteq/field/v1" &&
                                        Int(hit->at("conductor").get_ref<const std::string&>()) ==
                                            F.N) {
            doc = *hit; // deterministic build: cached bytes equal a fresh dump
        } else {
            doc = field_to_json(F);
            cache.store(key, doc);
        }
        docs.push_back(std::move(doc));
        paths.push_back(cache.enabled() ? cache.path_for(key) : std::string("-"));
    }
    if (g.json) {
        json j = json::array();
        for (const auto& d : docs) j.push_back(d);
        std::cout << json_dump(j);
    } else if (g.csv) {
        std::printf("conductor,index,degree,minpoly,discriminant,file\n");
        for (std::size_t i = 0, k = 0; i < docs.size(); ++i, ++k) {
            if (i > 0 && docs[i]["conductor"] != docs[i - 1]["conductor"]) k = 0;
            std::printf("%s,%zu,%zu,\"%s\",%s,%s\n",
                        docs[i]["conductor"].get<std::string>().c_str(), k, fields[i].m,
                        docs[i]["minpoly_pretty"].get<std::string>().c_str(),
                        docs[i]["discriminant"].get<std::string>().c_str(), paths[i].c_str());
        }
    } else {
        std::printf("%zu field(s) of degree %ld:\n", fields.size(), ell);
        for (std::size_t i = 0, k = 0; i < docs.size(); ++i, ++k) {
            if (i > 0 && docs[i]["conductor"] != docs[i - 1]["conductor"]) k = 0;
            std::printf("  N = %-6s #%zu  disc = %-14s  %s\n",
                        docs[i]["conductor"].get<std::string>().c_str(), k,
                        docs[i]["discriminant"].get<std::string>().c_str(),
                        docs[i]["minpoly_pretty"].get<std::string>().c_str());
            if (cache.enabled()) std::printf("    -> %s\n", paths[i].c_str());
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
    std::string field_file;
    long ell = 5;
    long conductor = 0;
    long index = 0;
    std::string mode = "saturated";
    std::string units_file;
    std::string bound; // decimal string, empty = none
    std::uint64_t budget = 1'000'000'000;
};

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return json::parse(in);
}

CyclicField resolve_field(const GlobalOpts& g, const SolveArgs& a) {
    if (!a.field_file.empty()) return field_from_json(load_json_file(a.field_file));
    if (a.conductor <= 0)
        throw std::invalid_argument("solve: need --field FILE or --conductor N [--index i]");
    auto fields = subfields_of_conductor(a.ell, a.conductor);
    if (a.index < 0 || static_cast<std::size_t>(a.index) >= fields.size())
        throw std::invalid_argument("solve: --index out of range (conductor " +
                                    std::to_string(a.conductor) + " has " +
                                    std::to_string(fields.size()) + " fields)");
    (void)g;
    return fields[a.index];
}

void print_report_summary(const SolutionReport& rep) {
    std::printf("field: conductor %s, degree %zu\n", int_str(rep.field->N).c_str(),
                rep.field->m);
    std::printf("mode: %s\n", rep.mode.c_str());
    std::printf("initial bound: %s\n", int_str(rep.b_initial).c_str());
    std::string seq;
    for (const Int& b : rep.b_sequence) {
        if (!seq.empty()) seq += " -> ";
        seq += int_str(b);
    }
    std::printf("reduced bounds: %s\n", seq.empty() ? "(none)" : seq.c_str());
    std::printf("solutions: %zu (%zu orbits under the order-6 symmetry)\n", rep.count,
                rep.orbits.size());
    std::printf("exhaustive: %s\n", rep.exhaustive ? "yes" : "no");
    if (!rep.caveat.empty()) std::printf("caveat: %s\n", rep.caveat.c_str());
}

int cmd_solve(const GlobalOpts& g, const SolveArgs& a) {
    CyclicField F = resolve_field(g, a);

    SolveConfig cfg;
    cfg.mode = a.mode;
    cfg.threads = g.thread_count();
    cfg.enumeration_budget = a.budget;
    cfg.precision_schedule.clear();
    for (long p = g.precision, i = 0; i < 4; ++i, p *= 2) cfg.precision_schedule.push_back(p);
    if (!a.bound.empty()) cfg.initial_bound_override = Int(a.bound);

    UnitSystem user;
    std::string units_hash = "-";
    if (!a.units_file.empty()) {
        json ju = load_json_file(a.units_file);
        user = unit_system_from_json(F, ju, g.precision);
        cfg.user_units = &user;
        units_hash = cache_key("units", {ju.dump()});
    }

    // result depends on the field, mode, bound, and unit input -- not on
    // threads, seed, or budget (those only change speed or failure)
    std::vector<std::string> parts = field_key_parts(F);
    parts.push_back(cfg.mode);
    parts.push_back(a.bound.empty() ? "-" : a.bound);
    parts.push_back(units_hash);
    for (const Int& p : cfg.saturation_primes) parts.push_back(int_str(p));
    std::string key = cache_key("solve", parts);

    Cache cache = g.cache();
    json doc;
    SolutionReport rep;
    if (auto hit = cache.load(key)) {
        rep = report_from_json(F, *hit); // re-verifies every stored solution
        doc = *hit;
    } else {
        rep = solve_unit_equation(F, cfg);
        doc = report_to_json(rep);
        cache.store(key, doc);
    }

    if (g.json)
        std::cout << json_dump(doc);
    else
        print_report_summary(rep);
    return rep.caveat.empty() ? 0 : 2;
}

// ---------------------------------------------------------------------------
// survey

int cmd_survey(const GlobalOpts& g, long ell, bool deep, std::uint64_t budget) {
    CandidateReport cand = candidate_conductors(ell, g.factor_config());
    bool solve_stage = (ell == 5) || deep;

    json j;
    j["schema"] = "uniteq/survey/v1";
    j["ell"] = ell;
    j["candidates"] = candidates_to_json(cand);

    // conductors are squarefree products of k primes == 1 mod ell, so each
    // carries exactly (ell-1)^{k-1} degree-ell fields; only build them (the
    // expensive part) when we are actually going to solve
    Int total_fields = 0;
    json jc = json::array();
    for (const auto& c : cand.candidates) {
        Int n = pow_ui(Int(ell - 1), static_cast<unsigned long>(c.subset.size() - 1));
        total_fields += n;
        json row;
        row["conductor"] = int_str(c.conductor);
        row["field_count"] = int_str(n);
        jc.push_back(row);
    }
    j["field_counts"] = jc;

    std::vector<CyclicField> fields;
    if (solve_stage) fields = build_fields(g, ell, 0);
    json jf = json::array();
    for (const auto& F : fields) jf.push_back(field_to_json(F));
    j["fields"] = jf;

    if (!g.json) {
        std::printf("ell = %ld: %zu candidate conductor(s), %s field(s)\n", ell,
                    cand.candidates.size(), int_str(total_fields).c_str());
    }

    int rc = cand.sl_complete ? 0 : 2;
    std::vector<Int> exceptional;
    json jr = json::array();
    if (solve_stage) {
        Cache cache = g.cache();
        SolveConfig cfg;
        cfg.threads = g.thread_count();
        cfg.enumeration_budget = budget;
        for (const CyclicField& F : fields) {
            std::vector<std::string> parts = field_key_parts(F);
            parts.push_back(cfg.mode);
            parts.push_back("-");
            parts.push_back("-");
            for (const Int& p : cfg.saturation_primes) parts.push_back(int_str(p));
            std::string key = cache_key("solve", parts);
            SolutionReport rep;
            json doc;
            if (auto hit = cache.load(key)) {
                rep = report_from_json(F, *hit);
                doc = *hit;
            } else {
                rep = solve_unit_equation(F, cfg);
                doc = report_to_json(rep);
                cache.store(key, doc);
            }
            if (!rep.caveat.empty()) rc = 2;
            if (rep.count > 0) exceptional.push_back(F.N);
            jr.push_back(doc);
            if (!g.json && !g.csv)
                std::printf("  N = %-6s  solutions = %-4zu orbits = %-3zu B_final = %-5s %s\n",
                            int_str(F.N).c_str(), rep.count, rep.orbits.size(),
                            int_str(rep.b_final).c_str(), rep.exhaustive ? "" : "(non-exhaustive)");
            else if (g.csv)
                std::printf("%s,%zu,%zu,%s,%d\n", int_str(F.N).c_str(), rep.count,
                            rep.orbits.size(), int_str(rep.b_final).c_str(),
                            int(rep.exhaustive));
        }
    }
    j["reports"] = jr;
    j["exceptional_conductors"] = detail::int_list(exceptional);

    std::string verdict;
    if (!solve_stage)
        verdict = "candidate and field stages only; pass --deep to solve";
    else if (exceptional.empty())
        verdict = "no exceptional fields";
    else if (exceptional.size() == 1)
        verdict = "exactly one exceptional field, conductor " + int_str(exceptional[0]);
    else
        verdict = std::to_string(exceptional.size()) + " exceptional fields";
    j["verdict"] = verdict;

    if (g.json)
        std::cout << json_dump(j);
    else
        std::printf("verdict: %s\n", verdict.c_str());
    return rc;
}

// ---------------------------------------------------------------------------
// check-sg / nagell

int cmd_check_sg(const GlobalOpts& g, long p) {
    bool ok = sophie_germain_check(p);
    if (g.json) {
        json j;
        j["schema"] = "uniteq/check-sg/v1";
        j["p"] = p;
        j["exceptional"] = ok;
        std::cout << json_dump(j);
    } else {
        std::printf("2 + eta exceptional in Q(zeta_%ld)+: %s\n", p, ok ? "true" : "false");
    }
    return ok ? 0 : 1;
}

int cmd_nagell(const GlobalOpts& g, long k_from, long k_to) {
    if (k_to < k_from) throw std::invalid_argument("nagell: --k-to must be >= --k-from");
    json rows = json::array();
    if (g.csv) std::printf("k,exceptional,disc\n");
    bool all = true;
    for (long k = k_from; k <= k_to; ++k) {
        NagellCubic r = nagell_cubic_check(k);
        all = all && r.exceptional;
        if (g.json) {
            json row;
            row["k"] = k;
            row["exceptional"] = r.exceptional;
            row["disc"] = int_str(r.disc);
            rows.push_back(row);
        } else if (g.csv) {
            std::printf("%ld,%d,%s\n", k, int(r.exceptional), int_str(r.disc).c_str());
        } else {
            std::printf("k = %-4ld exceptional = %-5s disc = %s\n", k,
                        r.exceptional ? "true" : "false", int_str(r.disc).c_str());
        }
    }
    if (g.json) {
        json j;
        j["schema"] = "uniteq/nagell/v1";
        j["rows"] = rows;
        j["all_exceptional"] = all;
        std::cout << json_dump(j);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unit-equation classifier for cyclic fields of prime degree"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_flag("--json", g.json, "emit JSON instead of text");
    app.add_flag("--csv", g.csv, "emit CSV for tabular output");
    app.add_option("--seed", g.seed, "seed for randomized factoring");
    app.add_option("--threads", g.threads, "solver threads (0 = all cores)");
    app.add_option("--precision", g.precision, "base working precision in bits")
        ->check(CLI::Range(64L, 1L << 20));
    app.add_option("--cache-dir", g.cache_dir, "cache directory (default ./.ue-cache)");
    app.add_flag("--no-cache", g.no_cache, "disable the disk cache");

    long ell = 5, conductor = 0, p = 11, k_from = -1, k_to = 50;
    bool deep = false;
    std::uint64_t survey_budget = 1'000'000'000;
    SolveArgs sa;

    auto* rl = app.add_subcommand("rl", "compute R_ell and factor it");
    rl->add_option("--ell", ell, "prime degree")->required();

    auto* sl = app.add_subcommand("sl", "compute S_ell");
    sl->add_option("--ell", ell, "prime degree")->required();

    auto* cands = app.add_subcommand("candidates", "list candidate conductors");
    cands->add_option("--ell", ell, "prime degree")->required();

    auto* flds = app.add_subcommand("fields", "construct all candidate fields");
    flds->add_option("--ell", ell, "prime degree")->required();
    flds->add_option("--conductor", conductor, "restrict to one conductor");

    auto* slv = app.add_subcommand("solve", "solve the unit equation in one field");
    slv->add_option("--field", sa.field_file, "field JSON file");
    slv->add_option("--ell", sa.ell, "prime degree (with --conductor)");
    slv->add_option("--conductor", sa.conductor, "conductor (with --ell)");
    slv->add_option("--index", sa.index, "field index within the conductor");
    slv->add_option("--mode", sa.mode, "rigorous | saturated | heuristic")
        ->check(CLI::IsMember({"rigorous", "saturated", "heuristic"}));
    slv->add_option("--units", sa.units_file, "user fundamental units JSON");
    slv->add_option("--bound", sa.bound, "override the exponent bound");
    slv->add_option("--budget", sa.budget, "enumeration budget (leaf count)");

    auto* srv = app.add_subcommand("survey", "classify every candidate field for ell");
    srv->add_option("--ell", ell, "prime degree")->required();
    srv->add_flag("--deep", deep, "run the solver even for ell > 5");
    srv->add_option("--budget", survey_budget, "enumeration budget per field");

    auto* sg = app.add_subcommand("check-sg", "verify 2 + eta is exceptional in Q(zeta_p)+");
    sg->add_option("--p", p, "prime >= 5")->required();

    auto* ng = app.add_subcommand("nagell", "scan the cubic family g_k");
    ng->add_option("--k-from", k_from, "first k");
    ng->add_option("--k-to", k_to, "last k");

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough(); // allow global flags after the verb

    CLI11_PARSE(app, argc, argv);

    try {
        if (rl->parsed()) return cmd_rl(g, ell);
        if (sl->parsed()) return cmd_sl(g, ell);
        if (cands->parsed()) return cmd_candidates(g, ell);
        if (flds->parsed()) return cmd_fields(g, ell, conductor);
        if (slv->parsed()) return cmd_solve(g, sa);
        if (srv->parsed()) return cmd_survey(g, ell, deep, survey_budget);
        if (sg->parsed()) return cmd_check_sg(g, p);
        if (ng->parsed()) return cmd_nagell(g, k_from, k_to);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}

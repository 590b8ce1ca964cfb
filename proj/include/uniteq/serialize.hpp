#pragma once

// JSON serialization of fields, unit systems, and solution reports, plus a
// small content-addressed disk cache. All big integers travel as decimal
// strings; objects use insertion-ordered keys so output bytes are
// reproducible run to run.

#include "uniteq/sieve.hpp"
#include "uniteq/solver.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace uniteq {

using json = nlohmann::ordered_json;

inline std::string json_dump(const json& j) { return j.dump(2) + "\n"; }

// human-readable monic polynomial, highest degree first
inline std::string poly_to_string(const IntPoly& f) {
    if (f.is_zero()) return "0";
    std::string s;
    for (std::size_t i = f.c.size(); i-- > 0;) {
        const Int& a = f.c[i];
        if (a == 0) continue;
        Int mag = a < 0 ? Int(-a) : a;
        if (s.empty())
            s += a < 0 ? "-" : "";
        else
            s += a < 0 ? " - " : " + ";
        if (mag != 1 || i == 0) s += mag.get_str();
        if (i >= 1) {
            if (mag != 1) s += "*";
            s += "x";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

namespace detail {

inline json int_list(const std::vector<Int>& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(x.get_str());
    return a;
}

inline std::vector<Int> int_list_from(const json& a) {
    std::vector<Int> v;
    for (const auto& x : a) v.emplace_back(x.get_ref<const std::string&>());
    return v;
}

} // namespace detail

inline json element_to_json(const FieldElement& e) {
    std::vector<Int> k = e.num;
    k.push_back(e.den);
    return detail::int_list(k);
}

inline FieldElement element_from_json(const CyclicField& F, const json& a) {
    std::vector<Int> k = detail::int_list_from(a);
    if (k.size() != F.m + 1)
        throw std::invalid_argument("element_from_json: wrong coordinate count");
    Int den = k.back();
    k.pop_back();
    return F.element(std::move(k), den);
}

inline json field_to_json(const CyclicField& F) {
    json j;
    j["schema"] = "uniteq/field/v1";
    j["degree"] = F.m;
    j["conductor"] = F.N.get_str();
    j["subgroup_generators"] = detail::int_list(F.H.generators);
    j["minpoly"] = detail::int_list(F.minpoly.c);
    j["minpoly_pretty"] = poly_to_string(F.minpoly);
    j["discriminant"] = F.discriminant.get_str();
    j["ramified_primes"] = detail::int_list(F.ramified_primes);
    j["coset_reps"] = detail::int_list(F.coset_reps);
    return j;
}

// rebuilds the field from (N, H) and revalidates against the stored minpoly
inline CyclicField field_from_json(const json& j) {
    if (j.value("schema", "") != "uniteq/field/v1")
        throw std::invalid_argument("field_from_json: unexpected schema");
    Int N(j.at("conductor").get_ref<const std::string&>());
    SubgroupZn H;
    H.parent = std::make_shared<UnitGroupZn>(unit_group_structure(N));
    H.generators = detail::int_list_from(j.at("subgroup_generators"));
    CyclicField F = build_cyclic_field(N, H);
    H.index = H.parent->order() / F.H.order();
    if (F.minpoly.c != detail::int_list_from(j.at("minpoly")))
        throw std::invalid_argument("field_from_json: stored minpoly does not match");
    return F;
}

// user-supplied fundamental units: {"generators": [[num..., den], ...]}
inline UnitSystem unit_system_from_json(const CyclicField& F, const json& j,
                                        mpfr_prec_t prec = 512) {
    UnitSystem U;
    U.field = &F;
    U.precision = prec;
    U.mode = j.value("mode", "user-fundamental");
    for (const auto& a : j.at("generators")) {
        FieldElement g = element_from_json(F, a);
        Rat n = norm(g);
        if (!(n == 1 || n == -1) || !is_algebraic_integer(g))
            throw std::invalid_argument("unit_system_from_json: generator is not a unit");
        U.generators.push_back(std::move(g));
    }
    detail::recompute_logs(U);
    return U;
}

inline json report_to_json(const SolutionReport& rep) {
    json j;
    j["schema"] = "uniteq/solution/v1";
    j["conductor"] = rep.field->N.get_str();
    j["minpoly"] = detail::int_list(rep.field->minpoly.c);
    j["mode"] = rep.mode;
    j["caveat"] = rep.caveat;
    j["exhaustive"] = rep.exhaustive;
    json bounds;
    bounds["initial"] = rep.b_initial.get_str();
    json seq = json::array();
    for (const Int& b : rep.b_sequence) seq.push_back(b.get_str());
    bounds["reduced_sequence"] = seq;
    bounds["final"] = rep.b_final.get_str();
    if (rep.log_cap)
        bounds["log_cap"] = *rep.log_cap;
    else
        bounds["log_cap"] = nullptr;
    j["bounds"] = bounds;
    j["count"] = rep.count;
    json sols = json::array();
    for (const auto& l : rep.solutions) sols.push_back(element_to_json(l));
    j["solutions"] = sols;
    json orbs = json::array();
    for (const auto& o : rep.orbits) {
        json row = json::array();
        for (std::size_t i : o) row.push_back(i);
        orbs.push_back(row);
    }
    j["orbits"] = orbs;
    return j;
}

// reattach to F; every solution is re-verified exactly on load
inline SolutionReport report_from_json(const CyclicField& F, const json& j) {
    if (j.value("schema", "") != "uniteq/solution/v1")
        throw std::invalid_argument("report_from_json: unexpected schema");
    if (Int(j.at("conductor").get_ref<const std::string&>()) != F.N ||
        detail::int_list_from(j.at("minpoly")) != F.minpoly.c)
        throw std::invalid_argument("report_from_json: report belongs to another field");
    SolutionReport rep;
    rep.field = &F;
    rep.mode = j.at("mode").get<std::string>();
    rep.caveat = j.at("caveat").get<std::string>();
    rep.exhaustive = j.at("exhaustive").get<bool>();
    const json& bounds = j.at("bounds");
    rep.b_initial = Int(bounds.at("initial").get_ref<const std::string&>());
    for (const auto& b : bounds.at("reduced_sequence"))
        rep.b_sequence.emplace_back(b.get_ref<const std::string&>());
    rep.b_final = Int(bounds.at("final").get_ref<const std::string&>());
    if (!bounds.at("log_cap").is_null()) rep.log_cap = bounds.at("log_cap").get<long>();
    for (const auto& a : j.at("solutions")) {
        FieldElement l = element_from_json(F, a);
        if (!verify_solution(F, l))
            throw std::invalid_argument("report_from_json: stored solution fails verification");
        rep.solutions.push_back(std::move(l));
    }
    rep.count = rep.solutions.size();
    if (j.at("count").get<std::size_t>() != rep.count)
        throw std::invalid_argument("report_from_json: count mismatch");
    for (const auto& o : j.at("orbits")) {
        std::vector<std::size_t> row;
        for (const auto& i : o) row.push_back(i.get<std::size_t>());
        rep.orbits.push_back(std::move(row));
    }
    return rep;
}

inline json candidates_to_json(const CandidateReport& rep) {
    json j;
    j["schema"] = "uniteq/candidates/v1";
    j["ell"] = rep.ell.get_str();
    j["rl"] = rep.rl.get_str();
    j["rl_factorization"] = format_factorization(rep.rl_factorization);
    j["sl"] = detail::int_list(rep.sl);
    j["sl_complete"] = rep.sl_complete;
    json rows = json::array();
    for (const auto& c : rep.candidates) {
        json row;
        row["subset"] = detail::int_list(c.subset);
        row["conductor"] = c.conductor.get_str();
        row["discriminant"] = c.discriminant.get_str();
        rows.push_back(row);
    }
    j["candidates"] = rows;
    return j;
}

// --------------------------------------------------------------------------
// Disk cache: one JSON payload per key, atomic replace via temp-file rename.

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct Cache {
    std::string dir; // empty means disabled

    // precedence: explicit flag, then UE_CACHE_DIR, then ./.ue-cache
    static Cache resolve(const std::string& flag_dir = "", bool disabled = false) {
        Cache c;
        if (disabled) return c;
        if (!flag_dir.empty()) {
            c.dir = flag_dir;
        } else if (const char* env = std::getenv("UE_CACHE_DIR"); env && *env) {
            c.dir = env;
        } else {
            c.dir = ".ue-cache";
        }
        return c;
    }

    bool enabled() const { return !dir.empty(); }

    std::string path_for(const std::string& key) const { return dir + "/" + key + ".json"; }

    std::optional<json> load(const std::string& key) const {
        if (!enabled()) return std::nullopt;
        std::ifstream in(path_for(key));
        if (!in) return std::nullopt;
        try {
            return json::parse(in);
        } catch (const json::exception&) {
            return std::nullopt; // corrupt entries are treated as misses
        }
    }

    std::string store(const std::string& key, const json& payload) const {
        if (!enabled()) return "";
        std::filesystem::create_directories(dir);
        std::string path = path_for(key);
        std::string tmp = path + ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            out << json_dump(payload);
        }
        std::filesystem::rename(tmp, path);
        return path;
    }
};

// readable prefix plus a hash of everything that identifies the content
inline std::string cache_key(const std::string& prefix, const std::vector<std::string>& parts) {
    std::string all = prefix;
    for (const auto& p : parts) {
        all += '\x1f';
        all += p;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a(all)));
    return prefix + "-" + buf;
}

} // namespace uniteq

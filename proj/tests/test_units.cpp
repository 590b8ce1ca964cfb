#include <catch2/catch_amalgamated.hpp>

#include "uniteq/interval.hpp"
#include "uniteq/qpoly.hpp"

#include <random>

using namespace uniteq;

TEST_CASE("interval arithmetic encloses exact rational results") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 200; ++t) {
        Rat a(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 97 + 1));
        Rat b(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 97 + 1));
        Interval ia = Interval::exact(a, 64);
        Interval ib = Interval::exact(b, 64);
        auto enc = [](const Interval& iv, const Rat& v) {
            return iv.lower_rat() <= v && v <= iv.upper_rat();
        };
        REQUIRE(enc(ia + ib, a + b));
        REQUIRE(enc(ia - ib, a - b));
        REQUIRE(enc(ia * ib, a * b));
        if (b != 0 && !ib.contains_zero()) REQUIRE(enc(ia / ib, a / b));
        REQUIRE(enc(abs(ia), abs(a)));
        REQUIRE(enc(pow_int(ia, 3), a * a * a));
    }
}

TEST_CASE("interval log/exp/sqrt bracket the truth") {
    Interval two = Interval::exact(2l, 256);
    Interval l = log(two);
    CHECK(l.lower_rat() < Rat(6931472, 10000000));
    CHECK(l.upper_rat() > Rat(6931471, 10000000));
    CHECK(l.width_rat() < Rat(1, Int(1) << 200));

    Interval e = exp(Interval::exact(1l, 256));
    CHECK(e.lower_rat() < Rat(27182819, 10000000));
    CHECK(e.upper_rat() > Rat(27182818, 10000000));

    Interval s = sqrt(two);
    Rat lo = s.lower_rat(), hi = s.upper_rat();
    CHECK(lo * lo < 2);
    CHECK(hi * hi > 2);

    CHECK_THROWS_AS(log(Interval::exact(0l, 64)), PrecisionExhausted);
    CHECK_THROWS_AS(log(Interval::exact(-1l, 64)), PrecisionExhausted);
    CHECK_THROWS_AS(sqrt(Interval::exact(-1l, 64)), PrecisionExhausted);
    CHECK_THROWS_AS(Interval::exact(1l, 64) / Interval::exact(0l, 64), DivisionByZero);
}

TEST_CASE("cos2pi at rational multiples") {
    // cos(2*pi*k/12) hits 1, 1/2, -1/2, -1, 0 exactly
    struct Ref {
        long num, den;
        double val;
    };
    for (auto [num, den, val] : {Ref{0, 1, 1.0}, Ref{1, 12, 0.8660254037844387},
                                 Ref{1, 6, 0.5}, Ref{1, 4, 0.0}, Ref{1, 3, -0.5},
                                 Ref{1, 2, -1.0}, Ref{5, 6, 0.5}, Ref{-1, 6, 0.5}}) {
        Interval c = cos2pi(Rat(num, den), 128);
        REQUIRE(c.lo_d() <= val + 1e-15);
        REQUIRE(c.hi_d() >= val - 1e-15);
        REQUIRE(c.width_rat() < Rat(1, Int(1) << 100));
    }
    // periodicity with big numerators
    Interval a = cos2pi(Rat(3, 11), 192);
    Interval b = cos2pi(Rat(3 + 7 * 11, 11), 192);
    CHECK(overlap(a, b));
    CHECK((a - b).contains_zero());
}

TEST_CASE("interval polynomial evaluation") {
    IntPoly f({std::vector<Int>{-2, 0, 1}}); // x^2 - 2
    Interval x = sqrt(Interval::exact(2l, 256));
    Interval v = eval(f, x);
    CHECK(v.contains_zero());
    CHECK(abs(v).upper_rat() < Rat(1, Int(1) << 200));
}

TEST_CASE("QPoly division and extended gcd") {
    QPoly a(IntPoly({std::vector<Int>{-1, 0, 0, 0, 0, 1}})); // x^5 - 1
    QPoly b(IntPoly({std::vector<Int>{-1, 1}}));             // x - 1
    auto [q, r] = divmod(a, b);
    CHECK(r.is_zero());
    CHECK(q.degree() == 4);
    CHECK((q * b).c == a.c);

    // gcd(x^4 - 1, x^6 - 1) = x^2 - 1
    QPoly f(IntPoly({std::vector<Int>{-1, 0, 0, 0, 1}}));
    QPoly g(IntPoly({std::vector<Int>{-1, 0, 0, 0, 0, 0, 1}}));
    auto [d, u, v] = extended_gcd(f, g);
    CHECK(d.degree() == 2);
    CHECK(d.c == std::vector<Rat>{-1, 0, 1});
    QPoly comb = u * f + v * g;
    CHECK(comb.c == d.c);

    // inverse of x modulo x^2 - 2: x/2
    QPoly m(IntPoly({std::vector<Int>{-2, 0, 1}}));
    QPoly xp(IntPoly({std::vector<Int>{0, 1}}));
    auto [d2, u2, v2] = extended_gcd(m, xp);
    (void)u2;
    CHECK(d2.degree() == 0);
    auto prod = divmod(v2 * xp, m).second;
    CHECK(prod.c == std::vector<Rat>{1});
}

TEST_CASE("isolate_real_roots") {
    // (x^2 - 2)(x^2 - 3) has roots +-sqrt2, +-sqrt3
    IntPoly f({std::vector<Int>{6, 0, -5, 0, 1}});
    auto roots = isolate_real_roots(f, Rat(1, Int(1) << 64));
    REQUIRE(roots.size() == 4);
    std::vector<double> expect{-1.7320508, -1.4142136, 1.4142136, 1.7320508};
    for (std::size_t i = 0; i < 4; ++i) {
        auto [a, b] = roots[i];
        CHECK(b - a <= Rat(1, Int(1) << 64));
        CHECK(a.get_d() <= expect[i] + 1e-6);
        CHECK(b.get_d() >= expect[i] - 1e-6);
        // sign change across the interval
        CHECK(sgn(eval(QPoly(f), a)) * sgn(eval(QPoly(f), b)) == -1);
    }

    // the quintic with 5 real roots 2cos(2*pi*k/11)
    IntPoly f11({std::vector<Int>{1, 3, -3, -4, 1, 1}});
    auto r11 = isolate_real_roots(f11, Rat(1, Int(1) << 128));
    REQUIRE(r11.size() == 5);
    for (std::size_t i = 0; i + 1 < 5; ++i) REQUIRE(r11[i].second < r11[i + 1].first);
    // cross-check against 2cos(2*pi*k/11), k = 1..5, sorted ascending
    std::vector<Interval> periods;
    for (long k = 1; k <= 5; ++k) {
        Interval c = cos2pi(Rat(k, 11), 256);
        periods.push_back(c + c);
    }
    std::sort(periods.begin(), periods.end(),
              [](const Interval& x, const Interval& y) { return certainly_less(x, y); });
    for (std::size_t i = 0; i < 5; ++i) {
        Interval root = Interval::hull(r11[i].first, r11[i].second, 256);
        CHECK(overlap(root, periods[i]));
    }

    CHECK(isolate_real_roots(IntPoly({std::vector<Int>{1, 0, 1}}), Rat(1, 100)).empty());
    CHECK(isolate_real_roots(IntPoly::constant(5), Rat(1, 100)).empty());
}

TEST_CASE("isolate_real_roots random cross-check against interval evaluation") {
    std::mt19937_64 rng(4242);
    int done = 0;
    while (done < 30) {
        // random cubic or quartic with distinct roots (discriminant check)
        int deg = 3 + static_cast<int>(rng() % 2);
        std::vector<Int> c(deg + 1);
        for (auto& x : c) x = Int(static_cast<long>(rng() % 41) - 20);
        if (c.back() == 0) continue;
        IntPoly f({c});
        if (discriminant(f) == 0) continue;
        auto roots = isolate_real_roots(f, Rat(1, Int(1) << 80));
        // count matches Sturm at the Cauchy bound; each enclosure evaluates near 0
        for (const auto& [a, b] : roots) {
            Interval x = Interval::hull(a, b, 128);
            CHECK(eval(f, x).contains_zero());
        }
        // distinct and sorted
        for (std::size_t i = 0; i + 1 < roots.size(); ++i)
            REQUIRE(roots[i].second < roots[i + 1].first);
        ++done;
    }
}

#include "uniteq/units.hpp"

TEST_CASE("cyclotomic_units produce a full-rank system of genuine units") {
    for (long N : {11, 31}) {
        auto F = subfields_of_conductor(5, N).at(0);
        auto U = cyclotomic_units(F);
        REQUIRE(U.generators.size() == 4);
        for (const auto& g : U.generators) {
            Rat nm = norm(g);
            CHECK((nm == 1 || nm == -1));
            CHECK(is_algebraic_integer(g));
        }
        // every row of the log matrix sums to 0 (norm +-1)
        for (const auto& row : U.log_matrix) {
            Interval s = Interval::exact(0l, U.precision);
            for (const auto& x : row) s = s + x;
            REQUIRE(s.contains_zero());
            REQUIRE(abs(s).upper_rat() < Rat(1, Int(1) << 200));
        }
        REQUIRE_FALSE(U.regulator.contains_zero());
        CHECK(U.regulator.lower_rat() > 0);
    }
    // the four conductor-341 fields
    for (const auto& F : subfields_of_conductor(5, 341)) {
        auto U = cyclotomic_units(F);
        REQUIRE(U.generators.size() == 4);
        REQUIRE(U.regulator.lower_rat() > 0);
    }
}

TEST_CASE("log_embedding basics") {
    auto F = subfields_of_conductor(5, 11).at(0);
    auto z = log_embedding(F.constant(1), 256);
    for (const auto& x : z) {
        CHECK(x.contains_zero());
        CHECK(x.width_rat() == 0);
    }
    auto zm = log_embedding(-F.constant(1), 256);
    for (const auto& x : zm) CHECK(x.contains_zero());

    // the known unit 2 + eta
    FieldElement u = F.constant(2) + F.eta();
    auto row = log_embedding(u, 512);
    Interval s = Interval::exact(0l, 512);
    for (const auto& x : row) s = s + x;
    CHECK(s.contains_zero());
    CHECK_THROWS(log_embedding(F.constant(0), 256));
}

TEST_CASE("subgroup_regulator errors on rank deficiency and is unimodular-invariant") {
    auto F = subfields_of_conductor(5, 11).at(0);
    auto U = cyclotomic_units(F);

    // duplicate row => determinant interval contains zero
    auto bad = U.log_matrix;
    bad[1] = bad[0];
    CHECK_THROWS_AS(subgroup_regulator(bad), PrecisionExhausted);

    Interval reg = U.regulator;
    // inverse of a generator
    {
        UnitSystem V = U;
        V.generators[0] = inv(V.generators[0]);
        detail::recompute_logs(V);
        CHECK(overlap(V.regulator, reg));
    }
    // g1 -> g1 * g2
    {
        UnitSystem V = U;
        V.generators[0] = V.generators[0] * V.generators[1];
        detail::recompute_logs(V);
        CHECK(overlap(V.regulator, reg));
    }
    // random small unimodular transforms
    std::mt19937_64 rng(808);
    for (int t = 0; t < 10; ++t) {
        UnitSystem V = U;
        // elementary ops: g_i *= g_j^{+-1}, i != j
        for (int step = 0; step < 3; ++step) {
            std::size_t i = rng() % 4, j = rng() % 4;
            if (i == j) continue;
            FieldElement gj = (rng() % 2) ? V.generators[j] : inv(V.generators[j]);
            V.generators[i] = V.generators[i] * gj;
        }
        detail::recompute_logs(V);
        REQUIRE(overlap(V.regulator, reg));
    }
}

TEST_CASE("saturation recovers an artificial squared generator") {
    auto F = subfields_of_conductor(5, 11).at(0);
    auto U = cyclotomic_units(F);
    Interval reg = U.regulator;

    UnitSystem crippled = U;
    crippled.generators[0] = crippled.generators[0] * crippled.generators[0];
    detail::recompute_logs(crippled);
    // squaring a generator doubles the regulator
    Interval doubled = reg + reg;
    REQUIRE(overlap(crippled.regulator, doubled));

    auto fixed = saturate(crippled, {Int(2)});
    REQUIRE(fixed.mode == "saturated");
    REQUIRE(fixed.saturation_log.size() == 1);
    CHECK(fixed.saturation_log[0].second.find("descent at 2") == 0);

    // 2-saturation of the crippled system lands on the same group as
    // 2-saturation of the original: the artificial square is recovered
    auto sat = saturate(U, {Int(2)});
    CHECK(overlap(fixed.regulator, sat.regulator));
    // and the crippled regulator is 2^k times the saturated one
    Interval ratio = crippled.regulator / fixed.regulator;
    double rd = ratio.mid_d();
    double k = std::log2(rd);
    CHECK(std::abs(k - std::round(k)) < 1e-6);
    CHECK(std::round(k) >= 1);
}

TEST_CASE("saturating the F_11 cyclotomic units reaches the field regulator") {
    auto F = subfields_of_conductor(5, 11).at(0);
    auto U = cyclotomic_units(F);
    // the H-norm units are squares of the classical cyclotomic units, so
    // saturation at 2 must descend; h^+(11) = 1, so afterwards the regulator
    // is the field regulator ~1.63569
    auto S = saturate(U, {Int(2), Int(3), Int(5), Int(7), Int(11), Int(13)});
    REQUIRE(S.saturation_log.size() == 6);
    CHECK(S.saturation_log[0].second.find("descent at 2") == 0);
    for (std::size_t i = 1; i < 6; ++i) CHECK(S.saturation_log[i].second.find("no descent") == 0);
    CHECK(S.regulator.lower_rat() > Rat(16, 10));
    CHECK(S.regulator.upper_rat() < Rat(17, 10));
    // index 16 between the pool group and the saturated group
    Interval ratio = U.regulator / S.regulator;
    Interval sixteen = Interval::exact(16l, S.precision);
    CHECK(overlap(ratio, sixteen));
}

TEST_CASE("units are closed under the Galois action") {
    auto F = subfields_of_conductor(5, 31).at(0);
    auto U = cyclotomic_units(F);
    for (const auto& g : U.generators) {
        for (std::size_t k = 0; k < 5; ++k) {
            FieldElement c = galois_apply(k, g);
            REQUIRE(norm(c) == norm(g));
            REQUIRE(is_algebraic_integer(c));
        }
    }
}

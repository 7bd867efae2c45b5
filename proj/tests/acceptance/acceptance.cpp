// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "moorehom/mv.hpp"
#include "moorehom/sft.hpp"
#include "moorehom/uct.hpp"
#include "oracles.hpp"

using namespace moore;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Tally {
  public:
    void check(bool ok, const std::string& what) {
        ++checks_;
        if (!ok && failures_++ < 5) first_ += (first_.empty() ? "" : "; ") + what;
    }
    size_t failures() const { return failures_; }
    Outcome outcome(const std::string& summary) const {
        std::ostringstream s;
        s << summary << ", " << checks_ << " checks";
        if (failures_) s << ", " << failures_ << " failures: " << first_;
        return {failures_ == 0, s.str()};
    }

  private:
    size_t checks_ = 0, failures_ = 0;
    std::string first_;
};

FinAbGroup Zq(int64_t q) {
    return FinAbGroup::cyclic(Integer(q));
}

Outcome unit_groupoid() {
    Tally t;
    auto C = moore_complex(presets::units(1), 5);
    validate(C);
    t.check(homology_int(C, 0).group == FinAbGroup::free(1), "H_0");
    for (size_t k = 1; k <= 4; ++k) t.check(homology_int(C, k).group.is_trivial(), "H_" + std::to_string(k));
    return t.outcome("units(1), N=5");
}

Outcome cyclic_oracle() {
    Tally t;
    for (int64_t m : {2, 3, 4, 6}) {
        auto C = moore_complex(presets::one_object_cyclic(size_t(m)), 4);
        validate(C);
        const oracle::GroupType expect[4] = {{1, {}}, {0, {m}}, {0, {}}, {0, {m}}};
        for (size_t n = 0; n < 4; ++n) {
            auto got = oracle::to_type(homology_int(C, n).group);
            std::string tag = "m=" + std::to_string(m) + " n=" + std::to_string(n);
            t.check(got == oracle::cyclic_group_homology(m, n), tag + " vs oracle");
            t.check(got == expect[n], tag + " vs closed form");
        }
    }
    return t.outcome("m in {2,3,4,6}, N=4");
}

Outcome uct_sweep() {
    Tally t;
    size_t instances = 0;
    for (const auto& [name, G] : corpus::groupoids())
        for (int64_t q = 1; q <= 12; ++q)
            for (const auto& r : uct_verify(G, Zq(q), 3)) {
                ++instances;
                std::string tag = name + " q=" + std::to_string(q) + " n=" + std::to_string(r.degree);
                auto parts = uct_assemble(r.integral_n, r.integral_nminus1, Zq(q));
                t.check(r.match && r.direct == parts.assembled, tag);
                t.check(r.order_equation, tag + " order");
            }
    return t.outcome(std::to_string(corpus::groupoids().size()) + " groupoids, " + std::to_string(instances) +
                     " (G,q,n) instances");
}

Outcome mod_q_oracle() {
    Tally t;
    size_t compared = 0, skipped = 0;
    auto run = [&](const std::string& name, const FreeChainComplex& C, size_t top) {
        for (int64_t q = 2; q <= 12; ++q)
            for (size_t n = 0; n < top; ++n) {
                auto e = oracle::enumerate_mod_homology(C, q, n, 1'000'000);
                if (!e) {
                    ++skipped;
                    continue;
                }
                ++compared;
                t.check(oracle::enumeration_matches(*e, homology_mod(C, Integer(q), n).group, q),
                        name + " q=" + std::to_string(q) + " n=" + std::to_string(n));
            }
    };
    for (const auto& [name, G] : corpus::groupoids()) run(name, moore_complex(G, 3), 3);
    // Random complexes Z^a <- Z^b <- Z^c with a boundary of ∂_1 as ∂_2.
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 40; ++it) {
        std::uniform_int_distribution<size_t> dim(1, 4);
        FreeChainComplex C;
        C.dims = {dim(rng), dim(rng), dim(rng)};
        IntegerMatrix d1 = oracle::random_matrix(rng, C.dims[0], C.dims[1], -6, 6);
        IntegerMatrix K = Lattice::kernel(d1).basis();
        IntegerMatrix d2 = K.cols() ? K * oracle::random_matrix(rng, K.cols(), C.dims[2], -3, 3)
                                    : IntegerMatrix(C.dims[1], C.dims[2]);
        C.boundaries = {d1, d2};
        run("random#" + std::to_string(it), C, 2);
    }
    return t.outcome(std::to_string(compared) + " enumerated instances (" + std::to_string(skipped) +
                     " above 10^6 skipped)");
}

bool zero_matrix_mod(const IntegerMatrix& M, const Integer& q) {
    return q.is_zero() ? M.is_zero() : M.reduced_mod(q).is_zero();
}

Outcome mv_degreewise() {
    Tally t;
    auto covers = corpus::three_orbit_covers();
    for (const auto& c : covers) {
        auto D = decompose(c.G, UnitSubset::from_positions(c.G, c.u1), UnitSubset::from_positions(c.G, c.u2));
        auto S = chain_ses(D, 3);
        for (size_t n = 0; n <= 3; ++n) {
            std::string tag = c.name + " n=" + std::to_string(n);
            t.check(S.checks[n].ok(), tag + " ses");
            t.check((S.beta[n] * S.alpha[n]).is_zero(), tag + " beta*alpha");
            if (n >= 1) {
                t.check(S.alpha[n - 1] * S.C12.boundary(n) == S.C1plus2.boundary(n) * S.alpha[n], tag + " alpha chain");
                t.check(S.beta[n - 1] * S.C1plus2.boundary(n) == S.C.boundary(n) * S.beta[n], tag + " beta chain");
            }
            // ker β = im α as lattices, rank(α) + rank(β) = middle dimension.
            t.check(Lattice::kernel(S.beta[n]) == Lattice::span(S.alpha[n]), tag + " ker=im");
            t.check(matrix_rank(S.alpha[n]) == S.C12.dims[n], tag + " alpha injective");
            t.check(matrix_rank(S.alpha[n]) + matrix_rank(S.beta[n]) == S.C1plus2.dims[n], tag + " ranks");
            t.check(matrix_rank(S.beta[n]) == S.C.dims[n], tag + " beta surjective");
            t.check(zero_matrix_mod(S.beta[n] * S.alpha[n], Integer(0)), tag + " composite");
        }
    }
    return t.outcome(std::to_string(covers.size()) + " three-orbit covers, degrees 0..3");
}

Outcome mv_les() {
    Tally t;
    size_t nodes = 0, zigzags = 0;
    std::mt19937_64 rng(7);
    for (const auto& c : corpus::all_covers()) {
        auto D = decompose(c.G, UnitSubset::from_positions(c.G, c.u1), UnitSubset::from_positions(c.G, c.u2));
        auto L = long_exact_sequence(D, 3, LesOptions{Integer(0), kDefaultNerveBudget, rng()});
        for (size_t i = 1; i + 1 < L.nodes.size(); ++i) {
            ++nodes;
            t.check(middle_homology(L.maps[i - 1].hom, L.maps[i].hom).is_trivial(), c.name + " node " + L.nodes[i].label);
        }
        zigzags += L.connecting_checked;
        t.check(L.connecting_boundaries, c.name + " connecting boundaries");
        t.check(L.lift_independent, c.name + " lift independence");
        t.check(L.cycle_lifts, c.name + " cycle lifts");
        // One explicit zig-zag per degree on a random cycle plus boundary,
        // with a randomized alternative lift.
        auto S = chain_ses(D, 3);
        std::uniform_int_distribution<int64_t> coef(-3, 3);
        for (size_t n = 1; n < 3; ++n) {
            auto h = homology_int(S.C, n);
            IntVector z(S.C.dims[n]);
            for (size_t j = 0; j < h.cycle_reps.cols(); ++j) {
                Integer a(coef(rng));
                for (size_t i = 0; i < z.size(); ++i) z[i].addmul(a, h.cycle_reps(i, j));
            }
            IntegerMatrix up = S.C.boundary(n + 1);
            IntVector w(up.cols());
            for (auto& x : w) x = Integer(coef(rng));
            z = vector_add(z, up.apply(w));
            std::string tag = c.name + " n=" + std::to_string(n);
            auto r = connecting(S, n, z);
            ++zigzags;
            t.check(r.is_boundary, tag + " zig-zag boundary");
            t.check(alternative_lift_agrees(S, n, z, rng), tag + " alternative lift");
            t.check(cycle_lift(S, n, z).has_value(), tag + " cycle lift");
        }
    }
    return t.outcome(std::to_string(corpus::all_covers().size()) + " covers, " + std::to_string(nodes) +
                     " interior nodes, " + std::to_string(zigzags) + " zig-zags");
}

Outcome family_tables() {
    Tally t;
    for (int64_t n = 2; n <= 7; ++n)
        for (int64_t m = 2; m <= 7; ++m) {
            FamilySpec s{n, m};
            auto integral = family_integral(s);
            moore::IntVector h0{Integer(0), Integer(n - 1), Integer(m - 1)};
            std::string tag = "(" + std::to_string(n) + "," + std::to_string(m) + ")";
            t.check(integral[0] == FinAbGroup::from_summands(0, h0), tag + " H_0");
            for (size_t k = 1; k < integral.size(); ++k) t.check(integral[k].is_trivial(), tag + " H_k");
            for (int64_t q = 1; q <= 12; ++q) {
                auto row = family_mod(s, q);
                auto [g, l] = oracle::two_cyclic_type(std::gcd(n - 1, q), std::gcd(m - 1, q));
                t.check(row.h1 == FinAbGroup::from_summands(0, moore::IntVector{Integer(g), Integer(l)}), tag + " H_1 mod q");
                t.check(row.h0 == FinAbGroup::from_summands(0, moore::IntVector{Integer(q), Integer(g), Integer(l)}),
                        tag + " H_0 mod q");
                t.check(row.h0 == uct_assemble(integral[0], FinAbGroup(), Zq(q)).assembled, tag + " UCT H_0");
                t.check(row.h1 == uct_assemble(integral[1], integral[0], Zq(q)).assembled, tag + " UCT H_1");
            }
        }
    return t.outcome("n,m in 2..7, q in 1..12");
}

Outcome full_shift() {
    Tally t;
    for (int64_t n = 2; n <= 12; ++n) {
        auto h = full_shift_homology(n);
        auto s = sft_matrix_homology(full_shift_matrix(size_t(n)));
        t.check(s.h0 == h[0] && s.h1 == h[1], "n=" + std::to_string(n));
        t.check(h[0] == Zq(n - 1), "n=" + std::to_string(n) + " closed form");
    }
    return t.outcome("n in 2..12");
}

std::string spec_text(const FamilySpec& s) {
    return "{" + std::to_string(s.n) + "," + std::to_string(s.m) + "}";
}

Outcome classification() {
    Tally t;
    size_t non_singleton = 0;
    for (int64_t n = 2; n <= 9; ++n)
        for (int64_t m = 2; m <= 9; ++m) {
            auto r = classify(family_h1_oracle({n, m}), 9);
            FamilySpec want = FamilySpec{n, m}.canonical();
            bool found = std::find(r.candidates.begin(), r.candidates.end(), want) != r.candidates.end();
            t.check(found, spec_text(want) + " missing from candidates");
            if (r.candidates.size() > 1) ++non_singleton;
        }
    auto collisions = collision_search(9, 2520);
    std::string listed;
    bool flagged = false;
    for (const auto& [a, b] : collisions) {
        listed += (listed.empty() ? "" : " ") + spec_text(a) + "~" + spec_text(b);
        if (a == FamilySpec{2, 7} && b == FamilySpec{3, 4}) flagged = true;
    }
    t.check(flagged, "({3,4},{7,2}) not reported");
    return t.outcome("soundness for n,m <= 9 (" + std::to_string(non_singleton) +
                     " non-singleton candidate sets); collision_search(9,2520) = [" + listed +
                     "] flagged for manual review");
}

Outcome cantor() {
    Tally t;
    std::mt19937_64 rng(99);
    for (unsigned k = 1; k <= 10; ++k) {
        auto r = cantor_obstruction(k);
        const Dyadic w = Dyadic::make(Integer(1), k);
        t.check(r.cylinders.size() == (size_t(1) << k), "k=" + std::to_string(k) + " cylinder count");
        t.check(r.all_widths_exact && r.nonconstant, "k=" + std::to_string(k) + " report");
        for (const auto& c : r.cylinders) t.check(c.width == w && c.sup - c.inf == w, "k=" + std::to_string(k));
        for (int i = 0; i < 100; ++i) {
            auto f = random_step_function(k, Integer(int64_t(2 + i % 11)), rng);
            t.check(phi_apply(phi_preimage(f), f.modulus).values == f.values, "k=" + std::to_string(k) + " step function");
        }
    }
    return t.outcome("k in 1..10, 100 step functions per level");
}

struct Criterion {
    int id;
    std::function<Outcome()> run;
    std::optional<double> limit_s;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, unit_groupoid, 1.0},   {2, cyclic_oracle, 30.0}, {3, uct_sweep, 300.0},       {4, mod_q_oracle, {}},
        {5, mv_degreewise, {}},    {6, mv_les, {}},          {7, family_tables, 10.0},    {8, full_shift, {}},
        {9, classification, 120.0}, {10, cantor, {}},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_s && secs >= *c.limit_s) {
            o.pass = false;
            o.detail += ", over the time limit";
        }
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.3fs", secs);
        std::printf("criterion %d: %s (%s, %s)\n", c.id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), timing);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

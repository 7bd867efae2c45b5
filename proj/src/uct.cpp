#include "moorehom/uct.hpp"

#include <algorithm>
#include <map>

namespace moore {

namespace {

Integer pow2(unsigned e) {
    Integer r(1);
    for (unsigned i = 0; i < e; ++i) r *= 2;
    return r;
}

bool finite_orders_match(const FinAbGroup& direct, const FinAbGroup& a, const FinAbGroup& b) {
    auto d = direct.order(), x = a.order(), y = b.order();
    if (!d || !x || !y) return true;
    return *d == *x * *y;
}

}  // namespace

UctParts uct_assemble(const FinAbGroup& Hn, const FinAbGroup& Hn_1, const FinAbGroup& A) {
    UctParts p;
    p.tensor_part = tensor(Hn, A);
    p.tor_part = tor1(Hn_1, A);
    p.assembled = direct_sum({p.tensor_part, p.tor_part});
    return p;
}

std::vector<UctReport> uct_verify(const FiniteGroupoid& G, const FinAbGroup& A, size_t N, size_t budget) {
    if (N == 0) throw ComplexError("uct_verify needs max degree >= 1");
    FreeChainComplex CZ = moore_complex(G, N, MooreOptions{Integer(0), budget, false});
    std::vector<FreeChainComplex> torsion_complexes;
    for (const auto& t : A.torsion()) torsion_complexes.push_back(moore_complex(G, N, MooreOptions{t, budget, false}));

    std::vector<UctReport> out;
    FinAbGroup previous;  // H_{-1} = 0
    for (size_t n = 0; n < N; ++n) {
        UctReport r;
        r.degree = n;
        r.integral_n = homology_int(CZ, n).group;
        r.integral_nminus1 = previous;
        r.coefficient = A;
        UctParts parts = uct_assemble(r.integral_n, r.integral_nminus1, A);
        r.tensor_part = parts.tensor_part;
        r.tor_part = parts.tor_part;
        r.assembled = parts.assembled;

        std::vector<FinAbGroup> direct_parts(A.rank(), r.integral_n);
        for (const auto& Cq : torsion_complexes) direct_parts.push_back(homology(Cq, n).group);
        r.direct = direct_sum(direct_parts);
        r.match = r.direct == r.assembled;
        r.order_equation = finite_orders_match(r.direct, r.tensor_part, r.tor_part);
        previous = r.integral_n;
        out.push_back(std::move(r));
    }
    return out;
}

bool phi_chain_check(const FiniteGroupoid& G, const Integer& q, size_t N, size_t budget) {
    FreeChainComplex CZ = moore_complex(G, N, MooreOptions{Integer(0), budget, false});
    FreeChainComplex Cq = moore_complex(G, N, MooreOptions{q, budget, false});
    if (CZ.dims != Cq.dims) return false;
    for (size_t n = 0; n < CZ.boundaries.size(); ++n)
        if (!(CZ.boundaries[n].reduced_mod(q) == Cq.boundaries[n])) return false;
    return true;
}

KappaReport kappa_check(const FiniteGroupoid& G, const Integer& q, size_t n, size_t budget) {
    if (q.sign() <= 0) throw AlgebraError("kappa_check needs q >= 1");
    FreeChainComplex C = moore_complex(G, n + 1, MooreOptions{Integer(0), budget, false});
    HomologyResult Hz = homology_int(C, n);
    HomologyResult Hq = homology_mod(C, q, n);

    KappaReport rep;
    rep.degree = n;
    rep.q = q;
    rep.direct = Hq.group;
    rep.tensor_part = tensor(Hz.group, FinAbGroup::cyclic(q));
    rep.tor_part = n == 0 ? FinAbGroup::trivial() : tor1(homology_int(C, n - 1).group, FinAbGroup::cyclic(q));

    const IntegerMatrix& rel = Hq.presentation.relations;
    const size_t g = Hq.presentation.generators;

    const IntegerMatrix reduced_reps = Hz.cycle_reps.reduced_mod(q);
    IntegerMatrix images(g, reduced_reps.cols());
    for (size_t j = 0; j < reduced_reps.cols(); ++j) {
        auto c = Hq.classify(reduced_reps.column(j));
        if (!c)
            throw AlgebraError("kappa image mismatch: reduced integral cycle " + std::to_string(j) +
                               " is not a mod-" + q.to_string() + " cycle");
        images.set_column(j, *c);
    }
    const IntegerMatrix reduced_bdry = C.boundary(n + 1).reduced_mod(q);
    for (size_t j = 0; j < reduced_bdry.cols(); ++j) {
        auto c = Hq.classify(reduced_bdry.column(j));
        if (!c || !is_zero_vector(*c))
            throw AlgebraError("kappa image mismatch: integral boundary column " + std::to_string(j) +
                               " has nonzero class mod " + q.to_string());
    }
    Lattice image_lattice = Lattice::span(IntegerMatrix::hconcat(images, rel));
    rep.image = Subquotient(std::move(image_lattice), rel).group();

    if (!(rep.image == rep.tensor_part))
        throw AlgebraError("kappa image mismatch: image " + rep.image.to_string() + " vs tensor part " +
                           rep.tensor_part.to_string() + " (witness cycle " +
                           (reduced_reps.cols() ? std::string("0") : std::string("none")) + ")");
    auto d = rep.direct.order(), i = rep.image.order(), t = rep.tor_part.order();
    if (!d || !i || !t || !(*d == *i * *t))
        throw AlgebraError("kappa image mismatch: |direct| = " + rep.direct.to_string() + " is not |image| * |tor| = " +
                           rep.image.to_string() + " * " + rep.tor_part.to_string());
    return rep;
}

Dyadic Dyadic::make(Integer num, unsigned exp) {
    Dyadic d{std::move(num), exp};
    if (d.num.is_zero()) {
        d.exp = 0;
        return d;
    }
    const Integer two(2);
    while (d.exp > 0 && divides(two, d.num)) {
        d.num = div_exact(d.num, two);
        --d.exp;
    }
    return d;
}

std::string Dyadic::to_string() const {
    if (exp == 0) return num.to_string();
    return num.to_string() + "/2^" + std::to_string(exp);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    unsigned e = std::max(a.exp, b.exp);
    return Dyadic::make(a.num * pow2(e - a.exp) + b.num * pow2(e - b.exp), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
    return a + Dyadic{-b.num, b.exp};
}

CantorReport cantor_obstruction(unsigned k) {
    if (k == 0 || k > 24) throw std::invalid_argument("cantor_obstruction: level must be in 1..24");
    CantorReport rep;
    rep.level = k;
    // Σ_{n>k} 2^{-n} = 2^{-k}: the all-ones tail attains it, the all-zeros tail gives 0.
    const Dyadic tail_sup = Dyadic::make(Integer(1), k);
    rep.all_widths_exact = true;
    const uint64_t count = uint64_t{1} << k;
    for (uint64_t idx = 0; idx < count; ++idx) {
        Cylinder c;
        c.word.resize(k);
        Dyadic inf = Dyadic::make(Integer(0), 0);
        for (unsigned n = 1; n <= k; ++n) {
            c.word[n - 1] = static_cast<uint8_t>((idx >> (k - n)) & 1);
            if (c.word[n - 1]) inf = inf + Dyadic::make(Integer(1), n);
        }
        c.inf = inf;
        c.sup = inf + tail_sup;
        c.width = c.sup - c.inf;
        if (!(c.width == tail_sup) || c.width.num.sign() <= 0) rep.all_widths_exact = false;
        rep.cylinders.push_back(std::move(c));
    }
    rep.witness_low = rep.cylinders.front().inf;
    rep.witness_high = rep.witness_low + Dyadic::make(Integer(1), k + 1);
    rep.nonconstant = !(rep.witness_low == rep.witness_high);
    return rep;
}

StepFunction random_step_function(unsigned level, const Integer& modulus, std::mt19937_64& rng) {
    StepFunction f;
    f.level = level;
    f.modulus = modulus;
    const size_t count = size_t{1} << level;
    // Few distinct values so that the preimage has repeated level sets.
    std::uniform_int_distribution<int> palette_size(1, 4);
    std::uniform_int_distribution<int64_t> value(-9, 9);
    IntVector palette(static_cast<size_t>(palette_size(rng)));
    for (auto& a : palette) {
        a = Integer(value(rng));
        if (!modulus.is_zero()) a = floor_mod(a, modulus);
    }
    std::uniform_int_distribution<size_t> pick(0, palette.size() - 1);
    for (size_t x = 0; x < count; ++x) f.values.push_back(palette[pick(rng)]);
    return f;
}

PhiPreimage phi_preimage(const StepFunction& f) {
    PhiPreimage p;
    p.level = f.level;
    std::map<Integer, std::vector<bool>> level_sets;
    for (size_t x = 0; x < f.values.size(); ++x) {
        Integer a = f.modulus.is_zero() ? f.values[x] : floor_mod(f.values[x], f.modulus);
        if (a.is_zero()) continue;
        auto [it, fresh] = level_sets.try_emplace(a, std::vector<bool>(f.values.size(), false));
        it->second[x] = true;
    }
    for (auto& [a, U] : level_sets) p.terms.emplace_back(a, std::move(U));
    return p;
}

StepFunction phi_apply(const PhiPreimage& p, const Integer& modulus) {
    StepFunction f;
    f.level = p.level;
    f.modulus = modulus;
    f.values.assign(size_t{1} << p.level, Integer(0));
    for (const auto& [a, U] : p.terms)
        for (size_t x = 0; x < U.size(); ++x)
            if (U[x]) f.values[x] += a;
    if (!modulus.is_zero())
        for (auto& v : f.values) v = floor_mod(v, modulus);
    return f;
}

}  // namespace moore

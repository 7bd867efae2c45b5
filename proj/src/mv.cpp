#include "moorehom/mv.hpp"

#include <stdexcept>
#include <unordered_map>

namespace moore {

namespace {

IntVector reduce_vec(IntVector v, const Integer& q) {
    if (!q.is_zero())
        for (auto& x : v) x = floor_mod(x, q);
    return v;
}

bool zero_mod(const IntegerMatrix& M, const Integer& q) {
    return q.is_zero() ? M.is_zero() : M.reduced_mod(q).is_zero();
}

bool zero_mod(std::span<const Integer> v, const Integer& q) {
    for (const auto& x : v)
        if (q.is_zero() ? !x.is_zero() : !divides(q, x)) return false;
    return true;
}

/// [M | qI] when q != 0, so that spans and solves happen modulo q.
IntegerMatrix with_modulus(const IntegerMatrix& M, const Integer& q) {
    if (q.is_zero()) return M;
    IntegerMatrix qI = IntegerMatrix::identity(M.rows());
    for (size_t i = 0; i < M.rows(); ++i) qI(i, i) = q;
    return IntegerMatrix::hconcat(M, qI);
}

std::vector<size_t> positions_within(const std::vector<size_t>& small_amb, const std::vector<size_t>& big_amb) {
    std::unordered_map<size_t, size_t> where;
    for (size_t i = 0; i < big_amb.size(); ++i) where.emplace(big_amb[i], i);
    std::vector<size_t> out;
    out.reserve(small_amb.size());
    for (size_t p : small_amb) {
        auto it = where.find(p);
        if (it == where.end()) throw std::logic_error("inclusion: tuple of the smaller piece missing from the larger one");
        out.push_back(it->second);
    }
    return out;
}

struct Zigzag {
    IntVector lift;
    IntVector a;
};

Zigzag zigzag_from_lift(const MvChainSes& S, size_t n, IntVector b) {
    const Integer& q = S.C.modulus;
    IntVector db = S.C1plus2.boundary(n).apply(b);
    const auto& p1 = S.pos12_in1[n - 1];
    IntVector a(p1.size());
    for (size_t w = 0; w < p1.size(); ++w) a[w] = db[p1[w]];
    a = reduce_vec(std::move(a), q);
    if (!zero_mod(vector_sub(S.alpha[n - 1].apply(a), db), q))
        throw std::logic_error("zig-zag: boundary of the lift is not in the image of alpha");
    return {std::move(b), std::move(a)};
}

void require_cycle(const MvChainSes& S, size_t n, std::span<const Integer> x) {
    if (n > S.max_degree) throw MvError("degree " + std::to_string(n) + " exceeds the built sequence");
    if (x.size() != S.C.dims[n]) throw MvError("cycle has the wrong length for degree " + std::to_string(n));
    if (!zero_mod(S.C.boundary(n).apply(x), S.C.modulus)) throw MvError("not a cycle");
}

bool same_hom(const PresentedGroup& target, const IntegerMatrix& f, const IntegerMatrix& g) {
    Lattice rel = target.relation_lattice();
    IntegerMatrix d = f - g;
    for (size_t j = 0; j < d.cols(); ++j)
        if (!rel.contains(d.column(j))) return false;
    return true;
}

struct Levels {
    std::vector<HomologyResult> h12, h1p2, hG;
    std::vector<IntegerMatrix> delta;  ///< delta[n] : H_n(G) -> H_{n-1}(12); delta[0] has no rows
};

IntegerMatrix connecting_matrix(const MvChainSes& S, size_t n, const HomologyResult& hG, const HomologyResult* h12) {
    if (n == 0) return IntegerMatrix(0, hG.cycle_reps.cols());
    IntegerMatrix M(h12->presentation.generators, hG.cycle_reps.cols());
    for (size_t j = 0; j < hG.cycle_reps.cols(); ++j) {
        IntVector x = hG.cycle_reps.column(j);
        Zigzag z = zigzag_from_lift(S, n, canonical_lift(S, n, x));
        auto c = h12->classify(z.a);
        if (!c) throw std::logic_error("zig-zag output is not a cycle");
        M.set_column(j, *c);
    }
    return M;
}

Levels build_levels(const MvChainSes& S, size_t N) {
    Levels L;
    for (size_t n = 0; n < N; ++n) {
        L.h12.push_back(homology(S.C12, n));
        L.h1p2.push_back(homology(S.C1plus2, n));
        L.hG.push_back(homology(S.C, n));
    }
    for (size_t n = 0; n < N; ++n) L.delta.push_back(connecting_matrix(S, n, L.hG[n], n ? &L.h12[n - 1] : nullptr));
    return L;
}

LesNode node_of(std::string label, const HomologyResult& h) {
    return LesNode{std::move(label), h.presentation, h.group, h.cycle_reps};
}

}  // namespace

MvError::MvError(const std::string& what, std::optional<ArrowId> w)
    : std::runtime_error(what + (w ? " (witness arrow " + std::to_string(*w) + ")" : std::string())), witness(w) {}

MvDecomposition decompose(const FiniteGroupoid& G, const UnitSubset& U1, const UnitSubset& U2) {
    for (const auto* U : {&U1, &U2})
        for (ArrowId u : U->members)
            if (u >= G.arrow_count() || !G.is_unit(u)) throw MvError("cover contains a non-unit " + std::to_string(u));
    if (!((U1 | U2) == UnitSubset::all(G))) throw MvError("cover fails: U1 ∪ U2 misses some units");
    if (auto w = saturation_witness(G, U1)) throw MvError("U1 not saturated", w);
    if (auto w = saturation_witness(G, U2)) throw MvError("U2 not saturated", w);
    MvDecomposition D;
    D.ambient = G;
    D.U1 = U1;
    D.U2 = U2;
    D.U12 = U1 & U2;
    D.piece1 = reduce(G, U1);
    D.piece2 = reduce(G, U2);
    D.piece12 = reduce(G, D.U12);
    return D;
}

std::vector<size_t> ambient_positions(const FiniteGroupoid& G, const Reduction& R, size_t n) {
    NerveLevel lvl = nerve(R.groupoid, n);
    NerveIndex index(G, n);
    std::vector<size_t> out;
    out.reserve(lvl.size());
    std::vector<ArrowId> t(lvl.width);
    for (size_t i = 0; i < lvl.size(); ++i) {
        auto src = lvl.tuple(i);
        for (size_t k = 0; k < src.size(); ++k) t[k] = R.embedding[src[k]];
        out.push_back(index.rank(t));
    }
    return out;
}

IntegerMatrix inclusion_matrix(const FiniteGroupoid& G, const Reduction& small, const Reduction& big, size_t n) {
    auto pos = positions_within(ambient_positions(G, small, n), ambient_positions(G, big, n));
    IntegerMatrix M(nerve_size(big.groupoid, n), pos.size());
    for (size_t i = 0; i < pos.size(); ++i) M(pos[i], i) = 1;
    return M;
}

std::vector<SesDegreeCheck> check_ses(const MvChainSes& S) {
    const Integer& q = S.C.modulus;
    std::vector<SesDegreeCheck> out;
    for (size_t n = 0; n <= S.max_degree; ++n) {
        SesDegreeCheck c;
        const IntegerMatrix& a = S.alpha[n];
        const IntegerMatrix& b = S.beta[n];
        if (n == 0) {
            c.alpha_chain = c.beta_chain = true;
        } else {
            c.alpha_chain = zero_mod(S.alpha[n - 1] * S.C12.boundary(n) - S.C1plus2.boundary(n) * a, q);
            c.beta_chain = zero_mod(S.beta[n - 1] * S.C1plus2.boundary(n) - S.C.boundary(n) * b, q);
        }
        c.alpha_injective = matrix_rank(a) == a.cols();
        c.beta_surjective = Lattice::span(b) == Lattice::full(b.rows());
        c.exact_middle = (b * a).is_zero() && Lattice::kernel(b) == Lattice::span(a);
        out.push_back(c);
    }
    return out;
}

MvChainSes chain_ses(const MvDecomposition& D, size_t N, const MvOptions& opts) {
    const FiniteGroupoid& G = D.ambient;
    MooreOptions mo{opts.modulus, opts.budget, false};
    MvChainSes S;
    S.max_degree = N;
    S.C = moore_complex(G, N, mo);
    S.C1 = moore_complex(D.piece1.groupoid, N, mo);
    S.C2 = moore_complex(D.piece2.groupoid, N, mo);
    S.C12 = moore_complex(D.piece12.groupoid, N, mo);
    S.C1plus2 = shift_sum({S.C1, S.C2});
    for (size_t n = 0; n <= N; ++n) {
        auto p1 = ambient_positions(G, D.piece1, n);
        auto p2 = ambient_positions(G, D.piece2, n);
        auto p12 = ambient_positions(G, D.piece12, n);
        auto in1 = positions_within(p12, p1);
        auto in2 = positions_within(p12, p2);
        const size_t d1 = p1.size(), d2 = p2.size(), d12 = p12.size();

        // α(ξ) = (ξ^(1), -ξ^(2)), β(ξ1, ξ2) = ξ̃1 + ξ̃2
        IntegerMatrix alpha(d1 + d2, d12), beta(S.C.dims[n], d1 + d2);
        for (size_t x = 0; x < d12; ++x) {
            alpha(in1[x], x) = 1;
            alpha(d1 + in2[x], x) = -1;
        }
        for (size_t y = 0; y < d1; ++y) beta(p1[y], y) = 1;
        for (size_t z = 0; z < d2; ++z) beta(p2[z], d1 + z) = 1;

        std::vector<bool> mask(d2, false);
        for (size_t p : in2) mask[p] = true;
        S.alpha.push_back(std::move(alpha));
        S.beta.push_back(std::move(beta));
        S.pos1.push_back(std::move(p1));
        S.pos2.push_back(std::move(p2));
        S.pos12_in1.push_back(std::move(in1));
        S.pos12_in2.push_back(std::move(in2));
        S.in12_of2.push_back(std::move(mask));
    }
    S.checks = check_ses(S);
    for (size_t n = 0; n <= N; ++n)
        if (!S.checks[n].ok())
            throw std::logic_error("Mayer-Vietoris short exact sequence fails at degree " + std::to_string(n));
    return S;
}

IntVector canonical_lift(const MvChainSes& S, size_t n, std::span<const Integer> x) {
    const auto& p1 = S.pos1[n];
    const auto& p2 = S.pos2[n];
    IntVector b(p1.size() + p2.size());
    for (size_t y = 0; y < p1.size(); ++y) b[y] = x[p1[y]];
    for (size_t z = 0; z < p2.size(); ++z)
        if (!S.in12_of2[n][z]) b[p1.size() + z] = x[p2[z]];
    return b;
}

ConnectingResult connecting(const MvChainSes& S, size_t n, std::span<const Integer> cycle) {
    require_cycle(S, n, cycle);
    ConnectingResult r;
    r.degree = n;
    if (n == 0) return r;
    Zigzag z = zigzag_from_lift(S, n, canonical_lift(S, n, cycle));
    HomologyResult h12 = homology(S.C12, n - 1);
    auto c = h12.classify(z.a);
    if (!c) throw std::logic_error("zig-zag output is not a cycle");
    r.chain = std::move(z.a);
    r.class_coords = std::move(*c);
    r.is_boundary = Lattice::span(with_modulus(S.C12.boundary(n), S.C.modulus)).contains(r.chain);
    return r;
}

bool alternative_lift_agrees(const MvChainSes& S, size_t n, std::span<const Integer> cycle, std::mt19937_64& rng) {
    require_cycle(S, n, cycle);
    if (n == 0) return true;
    IntVector b = canonical_lift(S, n, cycle);
    std::uniform_int_distribution<int64_t> dist(-3, 3);
    IntVector u(S.C12.dims[n]);
    for (auto& x : u) x = Integer(dist(rng));
    IntVector b2 = vector_add(b, S.alpha[n].apply(u));
    if (!zero_mod(vector_sub(S.beta[n].apply(b2), IntVector(cycle.begin(), cycle.end())), S.C.modulus)) return false;
    Zigzag z1 = zigzag_from_lift(S, n, std::move(b));
    Zigzag z2 = zigzag_from_lift(S, n, std::move(b2));
    IntVector diff = vector_sub(z2.a, z1.a);
    if (!Lattice::span(with_modulus(S.C12.boundary(n), S.C.modulus)).contains(diff)) return false;
    HomologyResult h12 = homology(S.C12, n - 1);
    return h12.classify(z1.a) == h12.classify(z2.a);
}

std::optional<IntVector> cycle_lift(const MvChainSes& S, size_t n, std::span<const Integer> cycle) {
    require_cycle(S, n, cycle);
    IntVector b = canonical_lift(S, n, cycle);
    if (n == 0) return b;
    Zigzag z = zigzag_from_lift(S, n, std::move(b));
    auto sol = solve_integer(with_modulus(S.C12.boundary(n), S.C.modulus), z.a);
    if (!sol) return std::nullopt;
    IntVector u(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(S.C12.dims[n]));
    IntVector w = vector_sub(z.lift, S.alpha[n].apply(u));
    const Integer& q = S.C.modulus;
    if (!zero_mod(S.C1plus2.boundary(n).apply(w), q) ||
        !zero_mod(vector_sub(S.beta[n].apply(w), IntVector(cycle.begin(), cycle.end())), q))
        throw std::logic_error("cycle lift construction failed");
    return reduce_vec(std::move(w), q);
}

GroupHom induced_map(const HomologyResult& source, const HomologyResult& target, const IntegerMatrix& chain_map) {
    IntegerMatrix M(target.presentation.generators, source.cycle_reps.cols());
    for (size_t j = 0; j < source.cycle_reps.cols(); ++j) {
        auto c = target.classify(chain_map.apply(source.cycle_reps.column(j)));
        if (!c) throw std::logic_error("chain map does not carry cycles to cycles");
        M.set_column(j, *c);
    }
    return GroupHom(source.presentation, target.presentation, std::move(M));
}

bool LongExactSequence::all_exact() const {
    for (const auto& e : exact_at)
        if (e && !*e) return false;
    return true;
}

LongExactSequence long_exact_sequence(const MvDecomposition& D, size_t N, const LesOptions& opts) {
    if (N == 0) throw MvError("long exact sequence needs max degree >= 1");
    MvChainSes S = chain_ses(D, N, MvOptions{opts.modulus, opts.budget});
    Levels L = build_levels(S, N);
    std::mt19937_64 rng(opts.seed);

    LongExactSequence les;
    const PresentedGroup zero(0, IntegerMatrix(0, 0));
    for (size_t k = N; k-- > 0;) {
        const std::string d = std::to_string(k);
        les.nodes.push_back(node_of("H_" + d + "(G|U12)", L.h12[k]));
        les.nodes.push_back(node_of("H_" + d + "(G|U1) ⊕ H_" + d + "(G|U2)", L.h1p2[k]));
        les.nodes.push_back(node_of("H_" + d + "(G)", L.hG[k]));
        les.maps.push_back(LesMap{"alpha_" + d, induced_map(L.h12[k], L.h1p2[k], S.alpha[k])});
        les.maps.push_back(LesMap{"beta_" + d, induced_map(L.h1p2[k], L.hG[k], S.beta[k])});
        const PresentedGroup& next = k ? L.h12[k - 1].presentation : zero;
        les.maps.push_back(LesMap{"delta_" + d, GroupHom(L.hG[k].presentation, next, L.delta[k])});

        if (k == 0) continue;
        for (size_t j = 0; j < L.hG[k].cycle_reps.cols(); ++j) {
            IntVector x = L.hG[k].cycle_reps.column(j);
            ++les.connecting_checked;
            Zigzag z = zigzag_from_lift(S, k, canonical_lift(S, k, x));
            if (!Lattice::span(with_modulus(S.C12.boundary(k), S.C.modulus)).contains(z.a))
                les.connecting_boundaries = false;
            if (!alternative_lift_agrees(S, k, x, rng)) les.lift_independent = false;
            if (!cycle_lift(S, k, x)) les.cycle_lifts = false;
        }
    }
    les.nodes.push_back(LesNode{"0", zero, FinAbGroup::trivial(), IntegerMatrix(0, 0)});

    les.exact_at.assign(les.nodes.size(), std::nullopt);
    for (size_t i = 1; i + 1 < les.nodes.size(); ++i)
        les.exact_at[i] = middle_homology(les.maps[i - 1].hom, les.maps[i].hom).is_trivial();
    return les;
}

bool naturality_ladder(const MvDecomposition& D, const MvDecomposition& Dp, size_t N, const MvOptions& opts) {
    if (!(D.ambient == Dp.ambient) || !(D.U2 == Dp.U2) || !((D.U1 | Dp.U1) == Dp.U1))
        throw MvError("naturality ladder needs the same ambient groupoid and U2, with U1 enlarged");
    const FiniteGroupoid& G = D.ambient;
    MvChainSes S = chain_ses(D, N, opts);
    MvChainSes Sp = chain_ses(Dp, N, opts);
    Levels L = build_levels(S, N);
    Levels Lp = build_levels(Sp, N);
    const Integer& q = opts.modulus;

    for (size_t n = 0; n < N; ++n) {
        IntegerMatrix i12 = inclusion_matrix(G, D.piece12, Dp.piece12, n);
        IntegerMatrix i1 = inclusion_matrix(G, D.piece1, Dp.piece1, n);
        IntegerMatrix i2 = inclusion_matrix(G, D.piece2, Dp.piece2, n);
        IntegerMatrix i1p2 = IntegerMatrix::block_diagonal({i1, i2});

        // Chain-level squares.
        if (!zero_mod(Sp.alpha[n] * i12 - i1p2 * S.alpha[n], q)) return false;
        if (!zero_mod(Sp.beta[n] * i1p2 - S.beta[n], q)) return false;

        // Homology-level squares.
        GroupHom h12 = induced_map(L.h12[n], Lp.h12[n], i12);
        GroupHom h1p2 = induced_map(L.h1p2[n], Lp.h1p2[n], i1p2);
        GroupHom a = induced_map(L.h12[n], L.h1p2[n], S.alpha[n]);
        GroupHom ap = induced_map(Lp.h12[n], Lp.h1p2[n], Sp.alpha[n]);
        if (!same_hom(Lp.h1p2[n].presentation, ap.matrix() * h12.matrix(), h1p2.matrix() * a.matrix())) return false;

        GroupHom b = induced_map(L.h1p2[n], L.hG[n], S.beta[n]);
        GroupHom bp = induced_map(Lp.h1p2[n], Lp.hG[n], Sp.beta[n]);
        GroupHom idG = induced_map(L.hG[n], Lp.hG[n], IntegerMatrix::identity(S.C.dims[n]));
        if (!same_hom(Lp.hG[n].presentation, bp.matrix() * h1p2.matrix(), idG.matrix() * b.matrix())) return false;

        if (n > 0) {
            GroupHom h12m = induced_map(L.h12[n - 1], Lp.h12[n - 1], inclusion_matrix(G, D.piece12, Dp.piece12, n - 1));
            if (!same_hom(Lp.h12[n - 1].presentation, h12m.matrix() * L.delta[n], Lp.delta[n] * idG.matrix()))
                return false;
        }
    }
    return true;
}

}  // namespace moore

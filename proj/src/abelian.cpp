#include "moorehom/abelian.hpp"

#include <algorithm>
#include <cctype>

namespace moore {

namespace {

// Invariant factors of Z/a_1 + ... + Z/a_k for a_i >= 2, without factoring:
// after the i-th sweep a_i divides every later entry.
IntVector invariant_chain(IntVector a) {
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = i + 1; j < a.size(); ++j) {
            Integer g = gcd(a[i], a[j]);
            Integer l = div_exact(a[i], g) * a[j];
            a[i] = std::move(g);
            a[j] = std::move(l);
        }
    }
    a.erase(std::remove_if(a.begin(), a.end(), [](const Integer& x) { return x.is_one(); }), a.end());
    return a;
}

std::vector<std::pair<int64_t, int>> factor_small(int64_t n) {
    std::vector<std::pair<int64_t, int>> out;
    for (int64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

FinAbGroup FinAbGroup::from_summands(size_t free_rank, const IntVector& cyclic_orders) {
    FinAbGroup g;
    g.rank_ = free_rank;
    IntVector finite;
    for (const auto& d : cyclic_orders) {
        if (d.is_zero()) {
            ++g.rank_;
            continue;
        }
        Integer a = abs(d);
        if (!a.is_one()) finite.push_back(std::move(a));
    }
    g.torsion_ = invariant_chain(std::move(finite));
    return g;
}

std::optional<Integer> FinAbGroup::order() const {
    if (rank_ > 0) return std::nullopt;
    Integer n(1);
    for (const auto& t : torsion_) n *= t;
    return n;
}

Integer FinAbGroup::count_killed_by(const Integer& k) const {
    if (rank_ > 0) throw AlgebraError("count_killed_by on an infinite group");
    Integer n(1);
    for (const auto& t : torsion_) n *= gcd(k, t);
    return n;
}

IntVector FinAbGroup::primary_decomposition() const {
    IntVector out;
    for (const auto& t : torsion_) {
        if (!t.fits_int64()) {
            // Too large to factor by trial division; keep it whole.
            out.push_back(t);
            continue;
        }
        for (auto [p, e] : factor_small(t.to_int64())) {
            int64_t q = 1;
            for (int i = 0; i < e; ++i) q *= p;
            out.emplace_back(q);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string FinAbGroup::to_string(bool primary) const {
    if (is_trivial()) return "0";
    std::vector<std::string> parts;
    if (rank_ == 1) parts.emplace_back("Z");
    if (rank_ > 1) parts.push_back("Z^" + std::to_string(rank_));
    for (const auto& t : primary ? primary_decomposition() : torsion_) parts.push_back("Z/" + t.to_string());
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += " ⊕ ";
        s += parts[i];
    }
    return s;
}

FinAbGroup FinAbGroup::parse(const std::string& text) {
    std::string s = text;
    // Normalize the separator to '+'.
    const std::string oplus = "⊕";
    for (size_t pos; (pos = s.find(oplus)) != std::string::npos;) s.replace(pos, oplus.size(), "+");
    size_t rank = 0;
    IntVector orders;
    size_t start = 0;
    while (true) {
        size_t plus = s.find('+', start);
        std::string tok = trim(s.substr(start, plus == std::string::npos ? std::string::npos : plus - start));
        if (tok.empty()) throw std::invalid_argument("empty summand in group '" + text + "'");
        if (tok == "0") {
            // trivial summand
        } else if (tok[0] == 'Z' || tok[0] == 'z') {
            std::string rest = trim(tok.substr(1));
            try {
                if (rest.empty()) {
                    rank += 1;
                } else if (rest[0] == '^') {
                    rank += static_cast<size_t>(std::stoul(trim(rest.substr(1))));
                } else if (rest[0] == '/') {
                    orders.push_back(Integer::parse(trim(rest.substr(1))));
                } else {
                    throw std::invalid_argument("");
                }
            } catch (const std::exception&) {
                throw std::invalid_argument("cannot parse summand '" + tok + "' in '" + text + "'");
            }
        } else {
            throw std::invalid_argument("cannot parse summand '" + tok + "' in '" + text + "'");
        }
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    return from_summands(rank, orders);
}

FinAbGroup group_of(const IntegerMatrix& M) {
    IntVector diag = smith_diagonal(M);
    size_t nonzero = 0;
    IntVector torsion;
    for (const auto& d : diag) {
        if (d.is_zero()) continue;
        ++nonzero;
        torsion.push_back(d);
    }
    return FinAbGroup::from_summands(M.rows() - nonzero, torsion);
}

FinAbGroup tensor(const FinAbGroup& g, const FinAbGroup& a) {
    size_t rank = g.rank() * a.rank();
    IntVector orders;
    for (size_t i = 0; i < g.rank(); ++i) orders.insert(orders.end(), a.torsion().begin(), a.torsion().end());
    for (size_t i = 0; i < a.rank(); ++i) orders.insert(orders.end(), g.torsion().begin(), g.torsion().end());
    for (const auto& x : g.torsion())
        for (const auto& y : a.torsion()) orders.push_back(gcd(x, y));
    return FinAbGroup::from_summands(rank, orders);
}

FinAbGroup tor1(const FinAbGroup& g, const FinAbGroup& a) {
    IntVector orders;
    for (const auto& x : g.torsion())
        for (const auto& y : a.torsion()) orders.push_back(gcd(x, y));
    return FinAbGroup::from_summands(0, orders);
}

FinAbGroup direct_sum(const std::vector<FinAbGroup>& groups) {
    size_t rank = 0;
    IntVector orders;
    for (const auto& g : groups) {
        rank += g.rank();
        orders.insert(orders.end(), g.torsion().begin(), g.torsion().end());
    }
    return FinAbGroup::from_summands(rank, orders);
}

PresentedGroup::PresentedGroup(size_t gens, IntegerMatrix rels) : generators(gens), relations(std::move(rels)) {
    if (relations.rows() != generators)
        throw AlgebraError("relation matrix has " + std::to_string(relations.rows()) + " rows for " +
                           std::to_string(generators) + " generators");
}

PresentedGroup PresentedGroup::diagonal(const IntVector& orders) {
    size_t cols = 0;
    for (const auto& d : orders)
        if (!d.is_zero()) ++cols;
    IntegerMatrix rel(orders.size(), cols);
    size_t c = 0;
    for (size_t i = 0; i < orders.size(); ++i)
        if (!orders[i].is_zero()) rel(i, c++) = orders[i];
    return PresentedGroup(orders.size(), std::move(rel));
}

PresentedGroup PresentedGroup::direct_sum(const std::vector<PresentedGroup>& parts) {
    std::vector<IntegerMatrix> blocks;
    size_t gens = 0;
    for (const auto& p : parts) {
        gens += p.generators;
        blocks.push_back(p.relations);
    }
    return PresentedGroup(gens, IntegerMatrix::block_diagonal(blocks));
}

bool PresentedGroup::is_zero(std::span<const Integer> element) const {
    return relation_lattice().contains(element);
}

GroupHom::GroupHom(PresentedGroup source, PresentedGroup target, IntegerMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.generators || matrix_.cols() != source_.generators)
        throw AlgebraError("homomorphism matrix is " + std::to_string(matrix_.rows()) + "x" +
                           std::to_string(matrix_.cols()) + ", expected " + std::to_string(target_.generators) +
                           "x" + std::to_string(source_.generators));
    Lattice target_rel = target_.relation_lattice();
    for (size_t j = 0; j < source_.relations.cols(); ++j) {
        if (!target_rel.contains(matrix_.apply(source_.relations.column(j))))
            throw AlgebraError("homomorphism does not respect source relation " + std::to_string(j));
    }
}

bool GroupHom::is_zero() const {
    Lattice target_rel = target_.relation_lattice();
    for (size_t j = 0; j < matrix_.cols(); ++j)
        if (!target_rel.contains(matrix_.column(j))) return false;
    return true;
}

Subquotient::Subquotient(Lattice K, const IntegerMatrix& sub_generators) : K_(std::move(K)) {
    const size_t k = K_.rank();
    if (sub_generators.rows() != K_.ambient()) throw AlgebraError("subquotient: ambient dimension mismatch");
    IntegerMatrix X(k, sub_generators.cols());
    for (size_t j = 0; j < sub_generators.cols(); ++j) {
        auto c = K_.coordinates(sub_generators.column(j));
        if (!c) throw AlgebraError("subquotient: generator " + std::to_string(j) + " is not in the numerator lattice");
        X.set_column(j, *c);
    }
    SmithDecomposition snf = smith_normal_form(X, SmithOptions{true, true, false});
    to_adapted_ = std::move(snf.U);

    IntVector all_orders(k);
    for (size_t i = 0; i < snf.diag.size(); ++i) all_orders[i] = snf.diag[i];
    IntegerMatrix adapted_basis = K_.basis() * snf.U_inverse;  // ambient x k

    for (size_t i = 0; i < k; ++i) {
        if (all_orders[i].is_one()) continue;
        kept_.push_back(i);
        orders_.push_back(all_orders[i]);
    }
    reps_ = IntegerMatrix(K_.ambient(), kept_.size());
    for (size_t c = 0; c < kept_.size(); ++c)
        for (size_t r = 0; r < K_.ambient(); ++r) reps_(r, c) = adapted_basis(r, kept_[c]);
    group_ = FinAbGroup::from_summands(0, orders_);
    presentation_ = PresentedGroup::diagonal(orders_);
}

std::optional<IntVector> Subquotient::classify(std::span<const Integer> v) const {
    auto c = K_.coordinates(v);
    if (!c) return std::nullopt;
    IntVector a = to_adapted_.apply(*c);
    IntVector out(kept_.size());
    for (size_t i = 0; i < kept_.size(); ++i) {
        const Integer& d = orders_[i];
        out[i] = d.is_zero() ? a[kept_[i]] : floor_mod(a[kept_[i]], d);
    }
    return out;
}

bool Subquotient::is_trivial_class(std::span<const Integer> v) const {
    auto c = classify(v);
    if (!c) throw AlgebraError("element is not in the numerator lattice");
    return is_zero_vector(*c);
}

FinAbGroup middle_homology(const GroupHom& f, const GroupHom& g) {
    if (!(f.target() == g.source())) throw AlgebraError("mismatched node");
    const PresentedGroup& Q = f.target();
    const PresentedGroup& R = g.target();
    const size_t b = Q.generators;

    Lattice r_rel = R.relation_lattice();
    IntegerMatrix gf = g.matrix() * f.matrix();
    for (size_t j = 0; j < gf.cols(); ++j)
        if (!r_rel.contains(gf.column(j)))
            throw AlgebraError("composite nonzero on generator " + std::to_string(j));

    // x in Z^b maps into the relation lattice of R  <=>  (x, y) in ker [G | Rel_R] for some y.
    Lattice joint = Lattice::kernel(IntegerMatrix::hconcat(g.matrix(), R.relations));
    IntegerMatrix joint_basis = joint.basis();
    Lattice K = Lattice::span(joint_basis.slice(0, b, 0, joint_basis.cols()));
    return Subquotient(std::move(K), IntegerMatrix::hconcat(f.matrix(), Q.relations)).group();
}

}  // namespace moore

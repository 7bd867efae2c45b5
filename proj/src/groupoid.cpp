#include "moorehom/groupoid.hpp"

#include <algorithm>
#include <numeric>

namespace moore {

namespace {

std::string join_ids(const std::vector<ArrowId>& ids) {
    std::string s;
    for (size_t i = 0; i < ids.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(ids[i]);
    }
    return s;
}

size_t sat_add(size_t a, size_t b) {
    size_t r;
    return __builtin_add_overflow(a, b, &r) ? SIZE_MAX : r;
}

size_t sat_mul(size_t a, size_t b) {
    size_t r;
    return __builtin_mul_overflow(a, b, &r) ? SIZE_MAX : r;
}

}  // namespace

GroupoidError::GroupoidError(std::string ax, std::vector<ArrowId> wit, const std::string& detail)
    : std::runtime_error(ax + (wit.empty() ? std::string() : " (witness arrows " + join_ids(wit) + ")") +
                         (detail.empty() ? std::string() : ": " + detail)),
      axiom(std::move(ax)),
      witnesses(std::move(wit)) {}

BudgetError::BudgetError(size_t deg, size_t total, size_t budget)
    : std::runtime_error("nerve budget exceeded at degree " + std::to_string(deg) + ": " +
                         (total == SIZE_MAX ? std::string("overflow") : std::to_string(total)) +
                         " basis elements > budget " + std::to_string(budget)),
      degree(deg) {}

FiniteGroupoid::FiniteGroupoid(size_t arrows, std::vector<ArrowId> units, std::vector<ArrowId> source,
                               std::vector<ArrowId> range, std::vector<ArrowId> inverse,
                               const std::vector<std::array<ArrowId, 3>>& compose_triples)
    : units_(std::move(units)), source_(std::move(source)), range_(std::move(range)), inverse_(std::move(inverse)) {
    if (arrows >= kNoArrow) throw GroupoidError("malformed groupoid", {}, "too many arrows");
    auto check_len = [&](const std::vector<ArrowId>& v, const char* field) {
        if (v.size() != arrows)
            throw GroupoidError("malformed groupoid", {},
                                std::string("field '") + field + "' has " + std::to_string(v.size()) +
                                    " entries, expected " + std::to_string(arrows));
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] >= arrows)
                throw GroupoidError("malformed groupoid", {static_cast<ArrowId>(i)},
                                    std::string("field '") + field + "' entry " + std::to_string(i) +
                                        " is out of range");
    };
    check_len(source_, "source");
    check_len(range_, "range");
    check_len(inverse_, "inverse");

    std::sort(units_.begin(), units_.end());
    if (std::adjacent_find(units_.begin(), units_.end()) != units_.end())
        throw GroupoidError("malformed groupoid", {}, "duplicate unit");
    unit_pos_.assign(arrows, kNoArrow);
    for (size_t p = 0; p < units_.size(); ++p) {
        if (units_[p] >= arrows) throw GroupoidError("malformed groupoid", {units_[p]}, "unit index out of range");
        unit_pos_[units_[p]] = static_cast<ArrowId>(p);
    }

    table_.assign(arrows * arrows, kNoArrow);
    for (const auto& [g, d, gd] : compose_triples) {
        if (g >= arrows || d >= arrows || gd >= arrows)
            throw GroupoidError("malformed groupoid", {g, d, gd}, "composition triple out of range");
        ArrowId& slot = table_[static_cast<size_t>(g) * arrows + d];
        if (slot != kNoArrow && slot != gd)
            throw GroupoidError("malformed groupoid", {g, d}, "conflicting composition entries");
        slot = gd;
    }
    labels_.resize(arrows);
    std::iota(labels_.begin(), labels_.end(), int64_t{0});
}

size_t FiniteGroupoid::unit_position(ArrowId u) const {
    ArrowId p = unit_pos_.at(u);
    if (p == kNoArrow) throw GroupoidError("not a unit", {u}, "");
    return p;
}

std::vector<std::array<ArrowId, 3>> FiniteGroupoid::compose_triples() const {
    std::vector<std::array<ArrowId, 3>> out;
    const size_t n = arrow_count();
    for (size_t g = 0; g < n; ++g)
        for (size_t d = 0; d < n; ++d) {
            ArrowId gd = table_[g * n + d];
            if (gd != kNoArrow) out.push_back({static_cast<ArrowId>(g), static_cast<ArrowId>(d), gd});
        }
    return out;
}

void FiniteGroupoid::set_labels(std::vector<int64_t> labels) {
    if (labels.size() != arrow_count()) throw GroupoidError("malformed groupoid", {}, "label count mismatch");
    labels_ = std::move(labels);
}

void validate_groupoid(const FiniteGroupoid& G) {
    const auto n = static_cast<ArrowId>(G.arrow_count());
    for (ArrowId a = 0; a < n; ++a) {
        if (!G.is_unit(G.source(a)) || !G.is_unit(G.range(a)))
            throw GroupoidError("source/range not a unit", {a}, "");
    }
    for (ArrowId u : G.units()) {
        if (G.source(u) != u || G.range(u) != u)
            throw GroupoidError("unit source/range law violated", {u}, "a unit must be its own source and range");
    }
    for (ArrowId g = 0; g < n; ++g) {
        for (ArrowId d = 0; d < n; ++d) {
            bool composable = G.source(g) == G.range(d);
            ArrowId gd = G.compose(g, d);
            if (composable && gd == kNoArrow)
                throw GroupoidError("composition undefined on a composable pair", {g, d}, "");
            if (!composable && gd != kNoArrow)
                throw GroupoidError("composition defined on a non-composable pair", {g, d}, "");
            if (composable && (G.source(gd) != G.source(d) || G.range(gd) != G.range(g)))
                throw GroupoidError("composition endpoints wrong", {g, d, gd}, "");
        }
    }
    for (ArrowId g = 0; g < n; ++g) {
        if (G.compose(G.range(g), g) != g || G.compose(g, G.source(g)) != g)
            throw GroupoidError("unit law violated", {g}, "");
    }
    for (ArrowId g = 0; g < n; ++g) {
        ArrowId inv = G.inverse(g);
        if (G.source(inv) != G.range(g) || G.range(inv) != G.source(g) || G.compose(g, inv) != G.range(g) ||
            G.compose(inv, g) != G.source(g))
            throw GroupoidError("inverse law violated", {g, inv}, "");
    }
    for (ArrowId g = 0; g < n; ++g)
        for (ArrowId d = 0; d < n; ++d) {
            ArrowId gd = G.compose(g, d);
            if (gd == kNoArrow) continue;
            for (ArrowId e = 0; e < n; ++e) {
                ArrowId de = G.compose(d, e);
                if (de == kNoArrow) continue;
                if (G.compose(gd, e) != G.compose(g, de))
                    throw GroupoidError("associativity violated", {g, d, e}, "");
            }
        }
}

namespace presets {

FiniteGroupoid units(size_t k) {
    std::vector<ArrowId> ids(k);
    std::iota(ids.begin(), ids.end(), ArrowId{0});
    std::vector<std::array<ArrowId, 3>> triples;
    for (ArrowId u : ids) triples.push_back({u, u, u});
    FiniteGroupoid G(k, ids, ids, ids, ids, triples);
    validate_groupoid(G);
    return G;
}

FiniteGroupoid one_object_cyclic(size_t m) {
    if (m == 0) throw GroupoidError("invalid preset parameters", {}, "cyclic order must be >= 1");
    std::vector<ArrowId> zero(m, 0), inv(m);
    std::vector<std::array<ArrowId, 3>> triples;
    for (size_t g = 0; g < m; ++g) {
        inv[g] = static_cast<ArrowId>((m - g) % m);
        for (size_t h = 0; h < m; ++h)
            triples.push_back({static_cast<ArrowId>(g), static_cast<ArrowId>(h), static_cast<ArrowId>((g + h) % m)});
    }
    FiniteGroupoid G(m, {0}, zero, zero, inv, triples);
    validate_groupoid(G);
    return G;
}

FiniteGroupoid pair(size_t k) {
    if (k == 0) throw GroupoidError("invalid preset parameters", {}, "pair groupoid needs at least one point");
    const size_t n = k * k;
    std::vector<ArrowId> units, src(n), rng(n), inv(n);
    std::vector<std::array<ArrowId, 3>> triples;
    auto id = [k](size_t i, size_t j) { return static_cast<ArrowId>(i * k + j); };
    for (size_t i = 0; i < k; ++i) {
        units.push_back(id(i, i));
        for (size_t j = 0; j < k; ++j) {
            rng[id(i, j)] = id(i, i);
            src[id(i, j)] = id(j, j);
            inv[id(i, j)] = id(j, i);
            for (size_t l = 0; l < k; ++l) triples.push_back({id(i, j), id(j, l), id(i, l)});
        }
    }
    FiniteGroupoid G(n, units, src, rng, inv, triples);
    validate_groupoid(G);
    return G;
}

FiniteGroupoid action(size_t m, const std::vector<size_t>& perm) {
    const size_t k = perm.size();
    if (m == 0) throw GroupoidError("invalid preset parameters", {}, "acting group order must be >= 1");
    if (k == 0) throw GroupoidError("invalid preset parameters", {}, "action on an empty set");
    std::vector<bool> seen(k, false);
    for (size_t x : perm) {
        if (x >= k || seen[x]) throw GroupoidError("invalid preset parameters", {}, "not a permutation");
        seen[x] = true;
    }
    // powers[g][x] = perm^g(x)
    std::vector<std::vector<size_t>> powers(m + 1, std::vector<size_t>(k));
    std::iota(powers[0].begin(), powers[0].end(), size_t{0});
    for (size_t g = 1; g <= m; ++g)
        for (size_t x = 0; x < k; ++x) powers[g][x] = perm[powers[g - 1][x]];
    for (size_t x = 0; x < k; ++x)
        if (powers[m][x] != x)
            throw GroupoidError("invalid preset parameters", {},
                                "permutation order does not divide " + std::to_string(m));

    const size_t n = m * k;
    auto id = [k](size_t g, size_t x) { return static_cast<ArrowId>(g * k + x); };
    std::vector<ArrowId> units, src(n), rng(n), inv(n);
    std::vector<std::array<ArrowId, 3>> triples;
    for (size_t x = 0; x < k; ++x) units.push_back(id(0, x));
    for (size_t g = 0; g < m; ++g)
        for (size_t x = 0; x < k; ++x) {
            size_t y = powers[g][x];
            src[id(g, x)] = id(0, x);
            rng[id(g, x)] = id(0, y);
            inv[id(g, x)] = id((m - g) % m, y);
            // (h, y) . (g, x) = (h + g, x)
            for (size_t h = 0; h < m; ++h) triples.push_back({id(h, y), id(g, x), id((h + g) % m, x)});
        }
    FiniteGroupoid G(n, units, src, rng, inv, triples);
    validate_groupoid(G);
    return G;
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    const auto off = static_cast<ArrowId>(a.arrow_count());
    const size_t n = a.arrow_count() + b.arrow_count();
    std::vector<ArrowId> units = a.units(), src = a.sources(), rng = a.ranges(), inv = a.inverses();
    for (ArrowId u : b.units()) units.push_back(u + off);
    for (size_t i = 0; i < b.arrow_count(); ++i) {
        src.push_back(b.sources()[i] + off);
        rng.push_back(b.ranges()[i] + off);
        inv.push_back(b.inverses()[i] + off);
    }
    auto triples = a.compose_triples();
    for (auto t : b.compose_triples()) triples.push_back({t[0] + off, t[1] + off, t[2] + off});
    FiniteGroupoid G(n, units, src, rng, inv, triples);
    validate_groupoid(G);
    return G;
}

}  // namespace presets

UnitSubset UnitSubset::all(const FiniteGroupoid& G) {
    return UnitSubset{G.units()};
}

UnitSubset UnitSubset::from_positions(const FiniteGroupoid& G, const std::vector<size_t>& positions) {
    UnitSubset U;
    for (size_t p : positions) {
        if (p >= G.unit_count())
            throw GroupoidError("unit position out of range", {},
                                std::to_string(p) + " >= " + std::to_string(G.unit_count()) + " units");
        U.members.push_back(G.units()[p]);
    }
    std::sort(U.members.begin(), U.members.end());
    U.members.erase(std::unique(U.members.begin(), U.members.end()), U.members.end());
    return U;
}

bool UnitSubset::contains(ArrowId u) const {
    return std::binary_search(members.begin(), members.end(), u);
}

std::vector<size_t> UnitSubset::positions(const FiniteGroupoid& G) const {
    std::vector<size_t> out;
    for (ArrowId u : members) out.push_back(G.unit_position(u));
    return out;
}

UnitSubset operator|(const UnitSubset& a, const UnitSubset& b) {
    UnitSubset r;
    std::set_union(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                   std::back_inserter(r.members));
    return r;
}

UnitSubset operator&(const UnitSubset& a, const UnitSubset& b) {
    UnitSubset r;
    std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                          std::back_inserter(r.members));
    return r;
}

UnitSubset operator-(const UnitSubset& a, const UnitSubset& b) {
    UnitSubset r;
    std::set_difference(a.members.begin(), a.members.end(), b.members.begin(), b.members.end(),
                        std::back_inserter(r.members));
    return r;
}

NerveIndex::NerveIndex(const FiniteGroupoid& G, size_t degree) : G_(&G), degree_(degree) {
    const size_t U = G.unit_count(), A = G.arrow_count();
    counts_.assign(degree + 1, std::vector<size_t>(U, 0));
    std::fill(counts_[0].begin(), counts_[0].end(), size_t{1});
    for (size_t L = 1; L <= degree; ++L)
        for (ArrowId d = 0; d < A; ++d) {
            size_t r = G.unit_position(G.range(d)), s = G.unit_position(G.source(d));
            counts_[L][r] = sat_add(counts_[L][r], counts_[L - 1][s]);
        }
    if (degree == 0) {
        size_ = U;
        return;
    }
    before_all_.assign(degree, std::vector<size_t>(A, 0));
    before_range_.assign(degree, std::vector<size_t>(A, 0));
    for (size_t L = 0; L < degree; ++L) {
        size_t running = 0;
        std::vector<size_t> per_range(U, 0);
        for (ArrowId d = 0; d < A; ++d) {
            size_t r = G.unit_position(G.range(d)), c = counts_[L][G.unit_position(G.source(d))];
            before_all_[L][d] = running;
            before_range_[L][d] = per_range[r];
            running = sat_add(running, c);
            per_range[r] = sat_add(per_range[r], c);
        }
        if (L == degree - 1) size_ = running;
    }
}

size_t NerveIndex::rank(std::span<const ArrowId> tuple) const {
    if (degree_ == 0) return G_->unit_position(tuple[0]);
    size_t r = 0;
    for (size_t i = 0; i < degree_; ++i) {
        size_t remaining = degree_ - 1 - i;
        r += i == 0 ? before_all_[remaining][tuple[0]] : before_range_[remaining][tuple[i]];
    }
    return r;
}

size_t nerve_size(const FiniteGroupoid& G, size_t n) {
    return NerveIndex(G, n).size();
}

NerveLevel nerve(const FiniteGroupoid& G, size_t n) {
    NerveLevel lvl;
    lvl.degree = n;
    lvl.width = std::max<size_t>(n, 1);
    if (n == 0) {
        lvl.flat = G.units();
        return lvl;
    }
    std::vector<std::vector<ArrowId>> by_range(G.unit_count());
    for (ArrowId a = 0; a < G.arrow_count(); ++a) by_range[G.unit_position(G.range(a))].push_back(a);
    lvl.flat.reserve(sat_mul(nerve_size(G, n), n));
    std::vector<ArrowId> cur(n);
    // Depth-first over sorted choices yields lexicographic order.
    auto extend = [&](auto&& self, size_t pos) -> void {
        if (pos == n) {
            lvl.flat.insert(lvl.flat.end(), cur.begin(), cur.end());
            return;
        }
        if (pos == 0) {
            for (ArrowId a = 0; a < G.arrow_count(); ++a) {
                cur[0] = a;
                self(self, 1);
            }
            return;
        }
        for (ArrowId a : by_range[G.unit_position(G.source(cur[pos - 1]))]) {
            cur[pos] = a;
            self(self, pos + 1);
        }
    };
    extend(extend, 0);
    return lvl;
}

std::vector<ArrowId> face(const FiniteGroupoid& G, size_t n, size_t i, std::span<const ArrowId> tuple) {
    if (n == 0 || i > n) throw std::out_of_range("face index out of range: d_" + std::to_string(i) + " on degree " + std::to_string(n));
    if (tuple.size() != n) throw std::out_of_range("face: tuple length does not match degree");
    if (n == 1) return {i == 0 ? G.source(tuple[0]) : G.range(tuple[0])};
    std::vector<ArrowId> out;
    out.reserve(n - 1);
    if (i == 0) {
        out.assign(tuple.begin() + 1, tuple.end());
    } else if (i == n) {
        out.assign(tuple.begin(), tuple.end() - 1);
    } else {
        out.assign(tuple.begin(), tuple.begin() + (i - 1));
        ArrowId c = G.compose(tuple[i - 1], tuple[i]);
        if (c == kNoArrow) throw GroupoidError("tuple is not composable", {tuple[i - 1], tuple[i]}, "");
        out.push_back(c);
        out.insert(out.end(), tuple.begin() + (i + 1), tuple.end());
    }
    return out;
}

IntegerMatrix pushforward_matrix(const FiniteGroupoid& G, size_t n, size_t i) {
    if (n == 0) throw std::out_of_range("pushforward_matrix needs degree >= 1");
    NerveLevel src = nerve(G, n);
    NerveIndex dst(G, n - 1);
    IntegerMatrix M(dst.size(), src.size());
    for (size_t x = 0; x < src.size(); ++x) M(dst.rank(face(G, n, i, src.tuple(x))), x) = 1;
    return M;
}

FreeChainComplex moore_complex(const FiniteGroupoid& G, size_t N, const MooreOptions& options) {
    std::vector<NerveIndex> index;
    size_t total = 0;
    for (size_t n = 0; n <= N; ++n) {
        index.emplace_back(G, n);
        total = sat_add(total, index.back().size());
        if (total > options.budget) throw BudgetError(n, total, options.budget);
    }
    const Integer& q = options.modulus;
    FreeChainComplex C;
    C.modulus = q;
    for (size_t n = 0; n <= N; ++n) C.dims.push_back(index[n].size());

    NerveLevel prev = nerve(G, 0);
    if (options.labels) {
        C.basis_labels.emplace_back();
        for (size_t k = 0; k < prev.size(); ++k) C.basis_labels.back().push_back(tuple_label(prev.tuple(k)));
    }
    for (size_t n = 1; n <= N; ++n) {
        NerveLevel lvl = nerve(G, n);
        IntegerMatrix d(C.dims[n - 1], C.dims[n]);
        for (size_t x = 0; x < lvl.size(); ++x) {
            auto t = lvl.tuple(x);
            for (size_t i = 0; i <= n; ++i) {
                Integer& e = d(index[n - 1].rank(face(G, n, i, t)), x);
                if (q.is_zero()) {
                    e += (i % 2 == 0) ? 1 : -1;
                } else {
                    // Pushforward of a Z/q-valued function: add ±1 in Z/q.
                    e = floor_mod(e + ((i % 2 == 0) ? Integer(1) : q - Integer(1)), q);
                }
            }
        }
        C.boundaries.push_back(std::move(d));
        if (options.labels) {
            C.basis_labels.emplace_back();
            for (size_t k = 0; k < lvl.size(); ++k) C.basis_labels.back().push_back(tuple_label(lvl.tuple(k)));
        }
        prev = std::move(lvl);
    }
    return C;
}

std::vector<UnitSubset> orbits(const FiniteGroupoid& G) {
    const size_t U = G.unit_count();
    std::vector<size_t> parent(U);
    std::iota(parent.begin(), parent.end(), size_t{0});
    auto find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (ArrowId a = 0; a < G.arrow_count(); ++a) {
        size_t s = find(G.unit_position(G.source(a))), r = find(G.unit_position(G.range(a)));
        if (s != r) parent[std::max(s, r)] = std::min(s, r);
    }
    std::vector<UnitSubset> out;
    std::vector<size_t> slot(U, SIZE_MAX);
    for (size_t p = 0; p < U; ++p) {
        size_t root = find(p);
        if (slot[root] == SIZE_MAX) {
            slot[root] = out.size();
            out.emplace_back();
        }
        out[slot[root]].members.push_back(G.units()[p]);
    }
    return out;
}

std::optional<ArrowId> saturation_witness(const FiniteGroupoid& G, const UnitSubset& U) {
    for (ArrowId a = 0; a < G.arrow_count(); ++a)
        if (U.contains(G.source(a)) != U.contains(G.range(a))) return a;
    return std::nullopt;
}

bool is_saturated(const FiniteGroupoid& G, const UnitSubset& U) {
    return !saturation_witness(G, U).has_value();
}

Reduction reduce(const FiniteGroupoid& G, const UnitSubset& U) {
    Reduction out;
    std::vector<ArrowId> new_id(G.arrow_count(), kNoArrow);
    for (ArrowId a = 0; a < G.arrow_count(); ++a) {
        if (U.contains(G.source(a)) && U.contains(G.range(a))) {
            new_id[a] = static_cast<ArrowId>(out.embedding.size());
            out.embedding.push_back(a);
        }
    }
    const size_t n = out.embedding.size();
    std::vector<ArrowId> units, src(n), rng(n), inv(n);
    std::vector<std::array<ArrowId, 3>> triples;
    std::vector<int64_t> labels(n);
    for (size_t i = 0; i < n; ++i) {
        ArrowId a = out.embedding[i];
        if (G.is_unit(a)) units.push_back(static_cast<ArrowId>(i));
        src[i] = new_id[G.source(a)];
        rng[i] = new_id[G.range(a)];
        inv[i] = new_id[G.inverse(a)];
        labels[i] = G.labels()[a];
        for (size_t j = 0; j < n; ++j) {
            ArrowId c = G.compose(a, out.embedding[j]);
            if (c != kNoArrow) triples.push_back({static_cast<ArrowId>(i), static_cast<ArrowId>(j), new_id[c]});
        }
    }
    out.groupoid = FiniteGroupoid(n, units, src, rng, inv, triples);
    out.groupoid.set_labels(std::move(labels));
    validate_groupoid(out.groupoid);
    return out;
}

FiniteGroupoid reduction(const FiniteGroupoid& G, const UnitSubset& U) {
    return reduce(G, U).groupoid;
}

std::string tuple_label(std::span<const ArrowId> tuple) {
    std::string s = "(";
    for (size_t i = 0; i < tuple.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(tuple[i]);
    }
    return s + ")";
}

}  // namespace moore

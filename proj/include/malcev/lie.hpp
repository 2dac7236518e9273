#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "malcev/algebra.hpp"
#include "malcev/derivations.hpp"
#include "malcev/errors.hpp"
#include "malcev/matrix.hpp"

namespace malcev {

/// A space of maps (or map tuples) closed under commutator, together with
/// the structure constants of the induced bracket in its canonical basis.
struct LieSubalgebra {
    std::size_t ambient;
    std::vector<std::size_t> blocks;
    SubspaceBasis basis;
    NaryAlgebra bracket;

    std::size_t dim() const { return basis.dim(); }
};

namespace detail {

inline Vec blockwise_commutator(const Vec& u, const Vec& v,
                                std::span<const std::size_t> blocks) {
    Vec out(u.size());
    std::size_t off = 0;
    for (std::size_t d : blocks) {
        const std::size_t block = d * d;
        // [A,B](i,j) = sum_k A(i,k)B(k,j) - B(i,k)A(k,j), column-major slices
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < d; ++i) {
                Rational& target = out[off + j * d + i];
                for (std::size_t k = 0; k < d; ++k) {
                    target.add_product(u[off + k * d + i], v[off + j * d + k]);
                    target -= v[off + k * d + i] * u[off + j * d + k];
                }
            }
        off += block;
    }
    return out;
}

}  // namespace detail

/// Verifies commutator closure of a flattened space and returns it with the
/// induced bracket table. Throws ClosureError with the offending pair.
inline LieSubalgebra lie_closure_check(std::vector<std::size_t> blocks,
                                       const SubspaceBasis& basis, const std::string& name) {
    std::size_t ambient = 0;
    for (std::size_t d : blocks) ambient += d * d;
    if (ambient != basis.ambient_dim())
        throw std::invalid_argument("lie_closure_check: block layout mismatch");
    const std::size_t k = basis.dim();
    if (k == 0) throw std::invalid_argument("lie_closure_check: empty basis");
    TensorEntries entries;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            Vec w = detail::blockwise_commutator(basis.vectors()[i], basis.vectors()[j], blocks);
            auto coords = basis.coordinates(w);
            if (!coords)
                throw ClosureError("lie_closure_check: [" + name + " basis " +
                                       std::to_string(i) + ", basis " + std::to_string(j) +
                                       "] leaves the span",
                                   i, j);
            SparseVec sv = sparse_from_dense(*coords);
            if (!sv.empty()) entries.push_back({{i, j}, std::move(sv)});
        }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < k; ++i) labels.push_back("b" + std::to_string(i + 1));
    return LieSubalgebra{ambient, std::move(blocks), basis,
                         NaryAlgebra(name + ":commutator", 2, k, labels, entries)};
}

inline LieSubalgebra lie_closure_check(const MapSpace& space) {
    return lie_closure_check({space.dim_d}, space.maps,
                             space.algebra_name + ":" + space.tag);
}

inline LieSubalgebra lie_closure_check(const TupleSpace& space) {
    return lie_closure_check(std::vector<std::size_t>(space.arity + 1, space.dim_d),
                             space.tuple_basis,
                             space.algebra_name + ":" + space.profile.tag);
}

/// Lie center {a in L : [a,b] = 0 for all b}, as coordinates in L's basis.
inline SubspaceBasis center(const LieSubalgebra& L) {
    const std::size_t k = L.dim();
    detail::RowEchelon ech(k);
    Vec row(k);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t r = 0; r < k; ++r) {
            std::fill(row.begin(), row.end(), Rational());
            bool nonzero = false;
            for (std::size_t i = 0; i < k; ++i) {
                const std::size_t idx[2] = {i, j};
                for (const auto& e : L.bracket.basis_product(idx))
                    if (e.index == r) {
                        row[i] = e.coeff;
                        nonzero = true;
                    }
            }
            if (nonzero) ech.insert(row);
        }
    return detail::nullspace_of(ech);
}

namespace detail {

/// ad matrices of an arity-2 structure-constant table: ad_i column j holds
/// the coordinates of [b_i, b_j].
inline std::vector<Matrix> ad_matrices(const NaryAlgebra& bracket) {
    const std::size_t k = bracket.dim();
    std::vector<Matrix> ad(k, Matrix(k, k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const std::size_t idx[2] = {i, j};
            for (const auto& e : bracket.basis_product(idx)) ad[i](e.index, j) = e.coeff;
        }
    return ad;
}

}  // namespace detail

struct KillingResult {
    Matrix matrix;
    std::size_t rank = 0;
};

/// kappa(b_i, b_j) = trace(ad b_i ad b_j), with exact rank.
inline KillingResult killing_form(const NaryAlgebra& bracket) {
    const std::size_t k = bracket.dim();
    const auto ad = detail::ad_matrices(bracket);
    KillingResult res;
    res.matrix = Matrix(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) {
            Rational tr;
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b) tr.add_product(ad[i](a, b), ad[j](b, a));
            res.matrix(i, j) = tr;
            res.matrix(j, i) = std::move(tr);
        }
    res.rank = rank(res.matrix);
    return res;
}

inline KillingResult killing_form(const LieSubalgebra& L) { return killing_form(L.bracket); }

/// Minimum centralizer dimension over seeded pseudo-random elements with
/// coordinates in {-9..9}. For a semisimple algebra this is an upper-bound
/// estimate of the rank, not a proof.
inline std::size_t rank_estimate(const NaryAlgebra& bracket, std::size_t trials,
                                 std::uint64_t seed) {
    if (trials == 0) throw std::invalid_argument("rank_estimate: trials must be positive");
    const std::size_t k = bracket.dim();
    const auto ad = detail::ad_matrices(bracket);
    std::mt19937_64 rng(seed);
    std::size_t best = k;
    for (std::size_t t = 0; t < trials; ++t) {
        Matrix adx(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            const long long c = static_cast<long long>(rng() % 19) - 9;
            if (c == 0) continue;
            const Rational f(c);
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t j = 0; j < k; ++j)
                    if (!ad[i](r, j).is_zero()) adx(r, j).add_product(f, ad[i](r, j));
        }
        best = std::min(best, nullspace(adx).dim());
    }
    return best;
}

inline std::size_t rank_estimate(const LieSubalgebra& L, std::size_t trials,
                                 std::uint64_t seed) {
    return rank_estimate(L.bracket, trials, seed);
}

struct DeltaQuotientReport {
    std::string algebra;
    std::size_t gder_dim = 0;
    std::size_t ann_dim = 0;
    std::size_t delta_dim = 0;
    std::size_t killing_rank = 0;
    std::size_t rank_est = 0;
    bool semisimple = false;
    bool ann_contains_identity = false;
};

/// Builds the quotient bracket of L by its center on the RREF-canonical
/// complement (unit vectors at the center's non-pivot coordinates).
inline std::optional<NaryAlgebra> quotient_by_center(const LieSubalgebra& L,
                                                     const SubspaceBasis& cen,
                                                     const std::string& name) {
    const std::size_t k = L.dim();
    std::vector<std::size_t> complement;
    {
        std::size_t next = 0;
        for (std::size_t c = 0; c < k; ++c) {
            if (next < cen.pivots().size() && cen.pivots()[next] == c) {
                ++next;
                continue;
            }
            complement.push_back(c);
        }
    }
    const std::size_t q = complement.size();
    if (q == 0) return std::nullopt;
    std::vector<std::size_t> quotient_index(k, k);
    for (std::size_t p = 0; p < q; ++p) quotient_index[complement[p]] = p;
    auto reduce_mod_center = [&](Vec w) {
        for (std::size_t r = 0; r < cen.dim(); ++r) {
            const Rational f = w[cen.pivots()[r]];
            if (f.is_zero()) continue;
            for (std::size_t c = 0; c < k; ++c)
                if (!cen.vectors()[r][c].is_zero()) w[c] -= f * cen.vectors()[r][c];
        }
        return w;
    };
    TensorEntries entries;
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b) {
            if (a == b) continue;
            const std::size_t idx[2] = {complement[a], complement[b]};
            Vec w = dense_from_sparse(L.bracket.basis_product(idx), k);
            w = reduce_mod_center(std::move(w));
            SparseVec sv;
            for (std::size_t c = 0; c < k; ++c)
                if (!w[c].is_zero()) sv.push_back({quotient_index[c], w[c]});
            if (!sv.empty()) entries.push_back({{a, b}, std::move(sv)});
        }
    std::vector<std::string> labels;
    for (std::size_t p = 0; p < q; ++p) labels.push_back("q" + std::to_string(p + 1));
    return NaryAlgebra(name, 2, q, labels, entries);
}

/// Structure data of Delta(A) = GDer(A) / Ann(GDer(A)): dimensions, plus
/// Killing rank and rank estimate of the quotient.
inline DeltaQuotientReport delta_quotient_report(const NaryAlgebra& a, std::size_t trials,
                                                 std::uint64_t seed) {
    DeltaQuotientReport rep;
    rep.algebra = a.name();
    const MapSpace gder = generalized_derivation_space(a);
    const LieSubalgebra L = lie_closure_check(gder);
    const SubspaceBasis ann = center(L);
    rep.gder_dim = L.dim();
    rep.ann_dim = ann.dim();
    rep.delta_dim = rep.gder_dim - rep.ann_dim;
    const auto id_coords = L.basis.coordinates(LinearMap::identity(a.dim()).flatten());
    rep.ann_contains_identity = id_coords.has_value() && ann.contains(*id_coords);
    const auto quotient = quotient_by_center(L, ann, a.name() + ":delta");
    if (quotient) {
        const KillingResult killing = killing_form(*quotient);
        rep.killing_rank = killing.rank;
        rep.rank_est = rank_estimate(*quotient, trials, seed);
        rep.semisimple = killing.rank == quotient->dim();
    } else {
        rep.semisimple = true;
    }
    return rep;
}

}  // namespace malcev

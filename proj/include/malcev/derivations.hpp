#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "malcev/algebra.hpp"
#include "malcev/errors.hpp"
#include "malcev/matrix.hpp"

namespace malcev {

/// Ordered (n+1)-tuple of linear maps (f0, f1, .., fn), a candidate
/// (n+1)-ary derivation.
struct MapTuple {
    std::vector<LinearMap> maps;

    std::size_t arity() const { return maps.size() - 1; }
    std::size_t dim() const { return maps.empty() ? 0 : maps.front().dim(); }

    /// Concatenated column-major blocks (f0 | f1 | .. | fn).
    Vec flatten() const {
        Vec out;
        for (const LinearMap& m : maps) {
            Vec f = m.flatten();
            out.insert(out.end(), f.begin(), f.end());
        }
        return out;
    }

    static MapTuple unflatten(const Vec& v, std::size_t arity, std::size_t d) {
        if (v.size() != (arity + 1) * d * d)
            throw std::invalid_argument("MapTuple: flat length mismatch");
        MapTuple t;
        for (std::size_t s = 0; s <= arity; ++s)
            t.maps.push_back(LinearMap::unflatten(
                Vec(v.begin() + static_cast<std::ptrdiff_t>(s * d * d),
                    v.begin() + static_cast<std::ptrdiff_t>((s + 1) * d * d)),
                d));
        return t;
    }
};

/// Slot equality classes plus per-slot multipliers: slot t carries the map
/// lambda_t * g_{class(t)}. The defining identity under a profile is
///   (lambda_0 g_{c0})[x1..xn] = sum_t [x1,..,(lambda_t g_{ct})(x_t),..,xn].
struct ConstraintProfile {
    std::string tag;
    std::vector<std::size_t> slot_class;
    std::vector<Rational> slot_multiplier;
    std::size_t class_count = 0;

    static ConstraintProfile derivation(std::size_t arity) {
        return {"der", std::vector<std::size_t>(arity + 1, 0),
                std::vector<Rational>(arity + 1, Rational(1)), 1};
    }

    static ConstraintProfile delta(std::size_t arity, const Rational& value) {
        ConstraintProfile p{"delta:" + value.str(), std::vector<std::size_t>(arity + 1, 0),
                            std::vector<Rational>(arity + 1, value), 1};
        p.slot_multiplier[0] = 1;
        return p;
    }

    static ConstraintProfile quasi(std::size_t arity) {
        ConstraintProfile p{"qder", std::vector<std::size_t>(arity + 1, 1),
                            std::vector<Rational>(arity + 1, Rational(1)), 2};
        p.slot_class[0] = 0;
        return p;
    }

    static ConstraintProfile unconstrained(std::size_t arity) {
        ConstraintProfile p{"nary", {}, std::vector<Rational>(arity + 1, Rational(1)),
                            arity + 1};
        for (std::size_t t = 0; t <= arity; ++t) p.slot_class.push_back(t);
        return p;
    }

    /// One centroid slot equation: psi[x1..xn] = [x1,..,psi(x_slot),..,xn].
    static ConstraintProfile centroid_slot(std::size_t arity, std::size_t slot) {
        if (slot < 1 || slot > arity)
            throw std::invalid_argument("centroid_slot: slot out of range");
        ConstraintProfile p{"centroid[" + std::to_string(slot) + "]",
                            std::vector<std::size_t>(arity + 1, 0),
                            std::vector<Rational>(arity + 1, Rational(0)), 1};
        p.slot_multiplier[0] = 1;
        p.slot_multiplier[slot] = 1;
        return p;
    }
};

namespace detail {

/// Streams the linear system of a profile: for every basis argument tuple,
/// one block of d rows (one per output coordinate). Unknown order: class
/// blocks in class order, column-major map entries inside each block.
template <class Fn>
void for_each_system_block(const NaryAlgebra& a, const ConstraintProfile& p, Fn&& emit) {
    const std::size_t n = a.arity();
    const std::size_t d = a.dim();
    const std::size_t width = p.class_count * d * d;
    std::vector<Vec> rows(d, Vec(width));
    std::vector<std::size_t> modified(n);
    for (std::size_t flat = 0; flat < a.tensor_size(); ++flat) {
        for (Vec& r : rows) std::fill(r.begin(), r.end(), Rational());
        const auto idx = a.tuple_of(flat);
        if (!p.slot_multiplier[0].is_zero()) {
            const std::size_t off = p.slot_class[0] * d * d;
            for (const auto& e : a.tensor_at(flat)) {
                const Rational v = p.slot_multiplier[0] * e.coeff;
                for (std::size_t r = 0; r < d; ++r) rows[r][off + e.index * d + r] += v;
            }
        }
        for (std::size_t t = 1; t <= n; ++t) {
            if (p.slot_multiplier[t].is_zero()) continue;
            const std::size_t off = p.slot_class[t] * d * d;
            modified.assign(idx.begin(), idx.end());
            for (std::size_t m = 0; m < d; ++m) {
                modified[t - 1] = m;
                for (const auto& e : a.basis_product(modified)) {
                    rows[e.index][off + idx[t - 1] * d + m] -= p.slot_multiplier[t] * e.coeff;
                }
            }
        }
        emit(rows);
    }
}

inline Vec materialize_tuple(const ConstraintProfile& p, std::size_t d, const Vec& class_vec) {
    const std::size_t block = d * d;
    Vec out((p.slot_class.size()) * block);
    for (std::size_t t = 0; t < p.slot_class.size(); ++t) {
        if (p.slot_multiplier[t].is_zero()) continue;
        const std::size_t src = p.slot_class[t] * block;
        for (std::size_t i = 0; i < block; ++i)
            out[t * block + i] = p.slot_multiplier[t] * class_vec[src + i];
    }
    return out;
}

}  // namespace detail

/// System matrix of a profile: d^n * d rows, class_count * d^2 columns; its
/// nullspace is exactly the solution space. All argument tuples are
/// enumerated, repetitions included.
inline Matrix assemble_system(const NaryAlgebra& a, const ConstraintProfile& p) {
    const std::size_t d = a.dim();
    Matrix m(a.tensor_size() * d, p.class_count * d * d);
    std::size_t next = 0;
    detail::for_each_system_block(a, p, [&](const std::vector<Vec>& rows) {
        for (const Vec& r : rows) m.set_row(next++, r);
    });
    return m;
}

/// Solution space of a profile over one algebra.
class TupleSpace {
public:
    TupleSpace() : class_basis(0), tuple_basis(0) {}

    std::string algebra_name;
    std::size_t arity = 0;
    std::size_t dim_d = 0;
    ConstraintProfile profile;
    /// Nullspace of the assembled system: ambient class_count * d^2.
    SubspaceBasis class_basis;
    /// Materialized tuples (f0 | .. | fn), RREF-canonical: ambient (n+1) d^2.
    SubspaceBasis tuple_basis;

    std::size_t dim() const { return tuple_basis.dim(); }

    MapTuple tuple_at(std::size_t k) const {
        return MapTuple::unflatten(tuple_basis.vectors().at(k), arity, dim_d);
    }

    /// Coordinate projection to one slot, re-canonicalized as d^2-vectors.
    SubspaceBasis slot_projection(std::size_t slot) const {
        if (slot > arity) throw std::invalid_argument("slot_projection: slot out of range");
        const std::size_t block = dim_d * dim_d;
        std::vector<Vec> slices;
        for (const Vec& v : tuple_basis.vectors())
            slices.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(slot * block),
                                v.begin() + static_cast<std::ptrdiff_t>((slot + 1) * block));
        return SubspaceBasis::span_of(block, slices);
    }
};

/// Basis of a space of single linear maps (d^2-vectors, column-major).
struct MapSpace {
    MapSpace() : maps(0) {}
    MapSpace(std::string algebra, std::string tag_, std::size_t d, SubspaceBasis basis)
        : algebra_name(std::move(algebra)), tag(std::move(tag_)), dim_d(d),
          maps(std::move(basis)) {}

    std::string algebra_name;
    std::string tag;
    std::size_t dim_d = 0;
    SubspaceBasis maps;

    std::size_t dim() const { return maps.dim(); }
    LinearMap map_at(std::size_t k) const {
        return LinearMap::unflatten(maps.vectors().at(k), dim_d);
    }
    bool contains(const LinearMap& m) const { return maps.contains(m.flatten()); }
};

inline TupleSpace solve_profile(const NaryAlgebra& a, ConstraintProfile p) {
    const std::size_t d = a.dim();
    detail::RowEchelon ech(p.class_count * d * d);
    detail::for_each_system_block(a, p, [&](const std::vector<Vec>& rows) {
        for (const Vec& r : rows) ech.insert(r);
    });
    TupleSpace ts;
    ts.algebra_name = a.name();
    ts.arity = a.arity();
    ts.dim_d = d;
    ts.class_basis = detail::nullspace_of(ech);
    std::vector<Vec> tuples;
    for (const Vec& g : ts.class_basis.vectors())
        tuples.push_back(detail::materialize_tuple(p, d, g));
    ts.tuple_basis = SubspaceBasis::span_of((a.arity() + 1) * d * d, tuples);
    ts.profile = std::move(p);
    return ts;
}

/// Der(A): all-slots-equal solutions. Basis maps are the class_basis vectors.
inline TupleSpace derivation_space(const NaryAlgebra& a) {
    return solve_profile(a, ConstraintProfile::derivation(a.arity()));
}

inline MapSpace derivation_maps(const NaryAlgebra& a) {
    TupleSpace ts = derivation_space(a);
    return MapSpace(a.name(), "der", a.dim(), ts.slot_projection(0));
}

inline TupleSpace delta_derivation_space(const NaryAlgebra& a, const Rational& delta) {
    return solve_profile(a, ConstraintProfile::delta(a.arity(), delta));
}

inline TupleSpace quasiderivation_space(const NaryAlgebra& a) {
    return solve_profile(a, ConstraintProfile::quasi(a.arity()));
}

inline TupleSpace nary_derivation_space(const NaryAlgebra& a) {
    return solve_profile(a, ConstraintProfile::unconstrained(a.arity()));
}

/// GDer(A): the f0 components of the unconstrained tuple space.
inline MapSpace generalized_derivation_space(const NaryAlgebra& a) {
    TupleSpace ts = nary_derivation_space(a);
    return MapSpace(a.name(), "gder", a.dim(), ts.slot_projection(0));
}

/// Centroid: maps commuting into every slot of the product simultaneously.
inline MapSpace centroid(const NaryAlgebra& a) {
    const std::size_t d = a.dim();
    detail::RowEchelon ech(d * d);
    for (std::size_t slot = 1; slot <= a.arity(); ++slot) {
        detail::for_each_system_block(
            a, ConstraintProfile::centroid_slot(a.arity(), slot),
            [&](const std::vector<Vec>& rows) {
                for (const Vec& r : rows) ech.insert(r);
            });
    }
    return MapSpace(a.name(), "centroid", d, detail::nullspace_of(ech));
}

/// Exact membership check of the defining identity on all d^n basis tuples.
inline bool verify_member(const NaryAlgebra& a, const MapTuple& t) {
    const std::size_t n = a.arity();
    const std::size_t d = a.dim();
    if (t.maps.size() != n + 1)
        throw std::invalid_argument("verify_member: tuple arity mismatch");
    for (const LinearMap& m : t.maps)
        if (m.dim() != d) throw std::invalid_argument("verify_member: map dimension mismatch");
    std::vector<std::size_t> modified(n);
    Vec lhs(d), rhs(d);
    for (std::size_t flat = 0; flat < a.tensor_size(); ++flat) {
        const auto idx = a.tuple_of(flat);
        std::fill(lhs.begin(), lhs.end(), Rational());
        std::fill(rhs.begin(), rhs.end(), Rational());
        for (const auto& e : a.tensor_at(flat))
            for (std::size_t r = 0; r < d; ++r)
                lhs[r].add_product(e.coeff, t.maps[0].mat(r, e.index));
        for (std::size_t s = 1; s <= n; ++s) {
            modified.assign(idx.begin(), idx.end());
            for (std::size_t m = 0; m < d; ++m) {
                const Rational& f = t.maps[s].mat(m, idx[s - 1]);
                if (f.is_zero()) continue;
                modified[s - 1] = m;
                for (const auto& e : a.basis_product(modified))
                    rhs[e.index].add_product(f, e.coeff);
            }
        }
        if (lhs != rhs) return false;
    }
    return true;
}

/// Span of (D,..,D) for derivations D and (sum psi_i, psi_1,..,psi_n) for
/// centroid elements psi_i. Every generator is re-verified before inclusion.
inline TupleSpace trivial_tuple_space(const NaryAlgebra& a) {
    const std::size_t n = a.arity();
    const std::size_t d = a.dim();
    const std::size_t block = d * d;
    const TupleSpace der = derivation_space(a);
    const MapSpace cen = centroid(a);
    std::vector<Vec> generators;
    for (const Vec& dv : der.class_basis.vectors()) {
        Vec g((n + 1) * block);
        for (std::size_t t = 0; t <= n; ++t)
            std::copy(dv.begin(), dv.end(), g.begin() + static_cast<std::ptrdiff_t>(t * block));
        generators.push_back(std::move(g));
    }
    for (const Vec& psi : cen.maps.vectors())
        for (std::size_t slot = 1; slot <= n; ++slot) {
            Vec g((n + 1) * block);
            std::copy(psi.begin(), psi.end(), g.begin());
            std::copy(psi.begin(), psi.end(),
                      g.begin() + static_cast<std::ptrdiff_t>(slot * block));
            generators.push_back(std::move(g));
        }
    for (const Vec& g : generators)
        if (!verify_member(a, MapTuple::unflatten(g, n, d)))
            throw ConsistencyError("trivial_tuple_space: generator fails the defining identity");
    TupleSpace ts;
    ts.algebra_name = a.name();
    ts.arity = n;
    ts.dim_d = d;
    ts.profile = ConstraintProfile::unconstrained(n);
    ts.profile.tag = "trivial";
    ts.tuple_basis = SubspaceBasis::span_of((n + 1) * block, generators);
    ts.class_basis = ts.tuple_basis;
    return ts;
}

struct TrivialityReport {
    std::string algebra;
    bool trivial = false;
    std::size_t nary_dim = 0;
    std::size_t trivial_dim = 0;
    std::size_t sum_dim = 0;
    std::optional<MapTuple> witness;
};

/// Certifies whether every (n+1)-ary derivation is trivial: the trivial
/// span must equal the full solution space. Otherwise emits the first
/// solution-basis tuple outside the trivial span.
inline TrivialityReport triviality_certificate(const NaryAlgebra& a) {
    TrivialityReport rep;
    rep.algebra = a.name();
    const TupleSpace full = nary_derivation_space(a);
    const TupleSpace triv = trivial_tuple_space(a);
    rep.nary_dim = full.dim();
    rep.trivial_dim = triv.dim();
    rep.sum_dim = subspace_sum_dim(full.tuple_basis, triv.tuple_basis);
    rep.trivial = rep.sum_dim == rep.trivial_dim && rep.trivial_dim == rep.nary_dim;
    if (!rep.trivial) {
        for (std::size_t k = 0; k < full.dim(); ++k) {
            if (!triv.tuple_basis.contains(full.tuple_basis.vectors()[k])) {
                rep.witness = full.tuple_at(k);
                break;
            }
        }
    }
    return rep;
}

/// Applies a permutation of slots 1..n; slot 0 stays fixed. sigma is given
/// as n values, sigma[i-1] = image slot of i, each in 1..n.
inline MapTuple permute_tuple(const MapTuple& t, std::span<const std::size_t> sigma) {
    const std::size_t n = t.arity();
    if (sigma.size() != n) throw std::invalid_argument("permute_tuple: permutation size mismatch");
    std::vector<bool> seen(n, false);
    for (std::size_t v : sigma) {
        if (v < 1 || v > n || seen[v - 1])
            throw std::invalid_argument("permute_tuple: not a permutation of 1..n");
        seen[v - 1] = true;
    }
    MapTuple out;
    out.maps.push_back(t.maps[0]);
    for (std::size_t i = 0; i < n; ++i) out.maps.push_back(t.maps[sigma[i]]);
    return out;
}

/// Span of the inner-derivation generators [R_{x,y}, R_{x,z}] + R_{x,[y,x,z]}
/// of the ternary algebra M8, with x over the polarization set (it occurs
/// with degree 2) and y, z over the basis. Right-multiplication operators
/// compose as right actions: zR1R2 = (zR1)R2.
inline MapSpace inner_derivations_m8(const NaryAlgebra& m8) {
    if (m8.arity() != 3)
        throw std::invalid_argument("inner_derivations_m8: expected a ternary algebra");
    const std::size_t d = m8.dim();
    std::vector<Vec> generators;
    const auto pol = polarization_set(m8);
    for (const Element& x : pol)
        for (std::size_t yi = 0; yi < d; ++yi)
            for (std::size_t zi = 0; zi < d; ++zi) {
                const Element y = basis_element(m8, yi);
                const Element z = basis_element(m8, zi);
                const Element xy[2] = {x, y};
                const Element xz[2] = {x, z};
                const LinearMap r1 = right_mult_operator(m8, xy);
                const LinearMap r2 = right_mult_operator(m8, xz);
                const Element w = product(m8, {y, x, z});
                const Element xw[2] = {x, w};
                const LinearMap r3 = right_mult_operator(m8, xw);
                const Matrix gen = r2.mat * r1.mat - r1.mat * r2.mat + r3.mat;
                generators.push_back(LinearMap(gen).flatten());
            }
    return MapSpace(m8.name(), "inner-der", d, SubspaceBasis::span_of(d * d, generators));
}

}  // namespace malcev

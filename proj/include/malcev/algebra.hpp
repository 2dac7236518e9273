#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "malcev/errors.hpp"
#include "malcev/matrix.hpp"
#include "malcev/rational.hpp"

namespace malcev {

struct SparseEntry {
    std::size_t index;
    Rational coeff;
    friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// Coordinate vector in sparse form, sorted by index, zero coefficients dropped.
using SparseVec = std::vector<SparseEntry>;

inline SparseVec normalize_sparse(SparseVec v) {
    std::sort(v.begin(), v.end(),
              [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
    SparseVec out;
    for (auto& e : v) {
        if (!out.empty() && out.back().index == e.index)
            out.back().coeff += e.coeff;
        else
            out.push_back(std::move(e));
    }
    std::erase_if(out, [](const SparseEntry& e) { return e.coeff.is_zero(); });
    return out;
}

inline SparseVec sparse_from_dense(const Vec& v) {
    SparseVec out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) out.push_back({i, v[i]});
    return out;
}

inline Vec dense_from_sparse(const SparseVec& v, std::size_t dim) {
    Vec out(dim);
    for (const auto& e : v) out[e.index] = e.coeff;
    return out;
}

/// Finite-dimensional algebra with one n-ary multilinear operation, stored
/// as a full structure-constant tensor over all d^n basis tuples.
/// Immutable after construction.
class NaryAlgebra {
public:
    NaryAlgebra(std::string name, std::size_t arity, std::size_t dim,
                std::vector<std::string> basis_labels,
                const std::vector<std::pair<std::vector<std::size_t>, SparseVec>>& entries)
        : name_(std::move(name)), arity_(arity), dim_(dim), labels_(std::move(basis_labels)) {
        if (arity_ < 2) throw std::invalid_argument("NaryAlgebra: arity must be >= 2");
        if (dim_ < 1) throw std::invalid_argument("NaryAlgebra: dimension must be >= 1");
        if (labels_.size() != dim_)
            throw std::invalid_argument("NaryAlgebra: label count must equal dimension");
        for (std::size_t i = 0; i < labels_.size(); ++i)
            for (std::size_t j = i + 1; j < labels_.size(); ++j)
                if (labels_[i] == labels_[j])
                    throw std::invalid_argument("NaryAlgebra: duplicate basis label '" +
                                                labels_[i] + "'");
        std::size_t size = 1;
        for (std::size_t i = 0; i < arity_; ++i) size *= dim_;
        tensor_.resize(size);
        for (const auto& [idx, value] : entries) {
            if (idx.size() != arity_)
                throw std::invalid_argument("NaryAlgebra: tensor key arity mismatch");
            tensor_[linearize(idx)] = normalize_sparse(value);
        }
    }

    const std::string& name() const { return name_; }
    std::size_t arity() const { return arity_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& basis_labels() const { return labels_; }

    std::optional<std::size_t> label_index(std::string_view label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return i;
        return std::nullopt;
    }

    const SparseVec& basis_product(std::span<const std::size_t> idx) const {
        return tensor_[linearize(idx)];
    }

    std::size_t tensor_size() const { return tensor_.size(); }
    const SparseVec& tensor_at(std::size_t flat) const { return tensor_[flat]; }

    /// Lexicographic tuple of a flat tensor position.
    std::vector<std::size_t> tuple_of(std::size_t flat) const {
        std::vector<std::size_t> idx(arity_);
        for (std::size_t s = arity_; s-- > 0;) {
            idx[s] = flat % dim_;
            flat /= dim_;
        }
        return idx;
    }

    std::size_t linearize(std::span<const std::size_t> idx) const {
        std::size_t flat = 0;
        for (std::size_t s = 0; s < arity_; ++s) {
            if (idx[s] >= dim_) throw std::out_of_range("NaryAlgebra: basis index out of range");
            flat = flat * dim_ + idx[s];
        }
        return flat;
    }

    /// Copy of all nonzero tensor entries in lexicographic order.
    std::vector<std::pair<std::vector<std::size_t>, SparseVec>> nonzero_entries() const {
        std::vector<std::pair<std::vector<std::size_t>, SparseVec>> out;
        for (std::size_t f = 0; f < tensor_.size(); ++f)
            if (!tensor_[f].empty()) out.emplace_back(tuple_of(f), tensor_[f]);
        return out;
    }

private:
    std::string name_;
    std::size_t arity_;
    std::size_t dim_;
    std::vector<std::string> labels_;
    std::vector<SparseVec> tensor_;
};

struct Element {
    const NaryAlgebra* algebra = nullptr;
    Vec coords;
};

inline Element basis_element(const NaryAlgebra& a, std::size_t i) {
    if (i >= a.dim()) throw std::out_of_range("basis_element: index out of range");
    Element e{&a, Vec(a.dim())};
    e.coords[i] = 1;
    return e;
}

inline Element zero_element(const NaryAlgebra& a) { return Element{&a, Vec(a.dim())}; }

inline Element element_of(const NaryAlgebra& a, Vec coords) {
    if (coords.size() != a.dim())
        throw std::invalid_argument("element_of: coordinate length mismatch");
    return Element{&a, std::move(coords)};
}

inline Element operator+(const Element& x, const Element& y) {
    if (x.coords.size() != y.coords.size())
        throw std::invalid_argument("Element: dimension mismatch");
    Element r = x;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] += y.coords[i];
    return r;
}

inline Element operator-(const Element& x, const Element& y) {
    if (x.coords.size() != y.coords.size())
        throw std::invalid_argument("Element: dimension mismatch");
    Element r = x;
    for (std::size_t i = 0; i < r.coords.size(); ++i) r.coords[i] -= y.coords[i];
    return r;
}

inline Element scaled(const Element& x, const Rational& f) {
    Element r = x;
    for (Rational& c : r.coords) c *= f;
    return r;
}

inline bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); });
}

namespace detail {

/// Multilinear product on coordinate vectors, accumulated into out.
inline void accumulate_product(const NaryAlgebra& a, std::span<const Vec* const> args,
                               const Rational& scale, Vec& out) {
    const std::size_t n = a.arity();
    std::vector<std::vector<std::size_t>> support(n);
    for (std::size_t s = 0; s < n; ++s) {
        const Vec& v = *args[s];
        if (v.size() != a.dim())
            throw std::invalid_argument("product: argument dimension mismatch");
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) support[s].push_back(i);
        if (support[s].empty()) return;
    }
    std::vector<std::size_t> idx(n, 0);
    std::vector<Rational> coeff(n + 1);
    coeff[0] = scale;
    std::size_t s = 0;
    std::vector<std::size_t> chosen(n, 0);
    while (true) {
        if (s == n) {
            const SparseVec& t = a.basis_product(chosen);
            for (const auto& e : t) out[e.index].add_product(coeff[n], e.coeff);
            --s;
            ++idx[s];
        }
        while (idx[s] >= support[s].size()) {
            if (s == 0) return;
            --s;
            ++idx[s];
        }
        chosen[s] = support[s][idx[s]];
        coeff[s + 1] = coeff[s] * (*args[s])[chosen[s]];
        ++s;
        if (s < n) idx[s] = 0;
    }
}

}  // namespace detail

inline Vec product_coords(const NaryAlgebra& a, std::span<const Vec* const> args) {
    if (args.size() != a.arity())
        throw std::invalid_argument("product: expected " + std::to_string(a.arity()) +
                                    " arguments, got " + std::to_string(args.size()));
    Vec out(a.dim());
    detail::accumulate_product(a, args, Rational(1), out);
    return out;
}

inline Element product(const NaryAlgebra& a, std::span<const Element> args) {
    std::vector<const Vec*> ptrs;
    ptrs.reserve(args.size());
    for (const Element& e : args) ptrs.push_back(&e.coords);
    return Element{&a, product_coords(a, ptrs)};
}

inline Element product(const NaryAlgebra& a, std::initializer_list<Element> args) {
    return product(a, std::span<const Element>(args.begin(), args.size()));
}

struct IdentityWitness {
    std::vector<Vec> args;
    Vec residual;
    std::string description;
};

struct IdentityReport {
    std::string identity;
    bool holds = false;
    std::uint64_t checked_count = 0;
    std::optional<IdentityWitness> witness;
};

/// Polarization substitutions for a degree-2 variable: {e_p + e_q : p <= q}.
inline std::vector<Element> polarization_set(const NaryAlgebra& a) {
    std::vector<Element> out;
    for (std::size_t p = 0; p < a.dim(); ++p)
        for (std::size_t q = p; q < a.dim(); ++q) {
            Element e = zero_element(a);
            e.coords[p] += 1;
            e.coords[q] += 1;
            out.push_back(std::move(e));
        }
    return out;
}

/// Checks that swapping any two adjacent slots negates the product on every
/// basis tuple, and that tuples with a repeated argument multiply to zero.
inline IdentityReport check_anticommutative(const NaryAlgebra& a) {
    IdentityReport rep{"anticommutative", true, 0, std::nullopt};
    const std::size_t n = a.arity();
    std::vector<std::size_t> swapped(n);
    for (std::size_t flat = 0; flat < a.tensor_size(); ++flat) {
        const auto idx = a.tuple_of(flat);
        const SparseVec& value = a.tensor_at(flat);
        bool repeated = false;
        for (std::size_t i = 0; i < n && !repeated; ++i)
            for (std::size_t j = i + 1; j < n && !repeated; ++j)
                if (idx[i] == idx[j]) repeated = true;
        if (repeated) {
            ++rep.checked_count;
            if (!value.empty()) {
                std::vector<Vec> args;
                for (std::size_t s : idx) args.push_back(basis_element(a, s).coords);
                rep.holds = false;
                rep.witness = IdentityWitness{std::move(args), dense_from_sparse(value, a.dim()),
                                              "repeated argument gives nonzero product"};
                return rep;
            }
        }
        for (std::size_t s = 0; s + 1 < n; ++s) {
            swapped.assign(idx.begin(), idx.end());
            std::swap(swapped[s], swapped[s + 1]);
            const SparseVec& other = a.basis_product(swapped);
            ++rep.checked_count;
            Vec residual = dense_from_sparse(value, a.dim());
            for (const auto& e : other) residual[e.index] += e.coeff;
            if (!is_zero(residual)) {
                std::vector<Vec> args;
                for (std::size_t t : idx) args.push_back(basis_element(a, t).coords);
                rep.holds = false;
                rep.witness = IdentityWitness{std::move(args), std::move(residual),
                                              "adjacent swap at slot " + std::to_string(s) +
                                                  " does not negate"};
                return rep;
            }
        }
    }
    return rep;
}

/// J(x,y,z) = (xy)z + (yz)x + (zx)y for binary algebras.
inline Element jacobian_binary(const NaryAlgebra& a, const Element& x, const Element& y,
                               const Element& z) {
    if (a.arity() != 2) throw std::invalid_argument("jacobian_binary: arity must be 2");
    return product(a, {product(a, {x, y}), z}) + product(a, {product(a, {y, z}), x}) +
           product(a, {product(a, {z, x}), y});
}

/// Checks J(x,y,xz) = J(x,y,z)x with x over the polarization set and y, z
/// over the basis (x occurs with degree 2).
inline IdentityReport check_malcev_binary(const NaryAlgebra& a) {
    if (a.arity() != 2) throw std::invalid_argument("check_malcev_binary: arity must be 2");
    IdentityReport rep{"malcev", true, 0, std::nullopt};
    const auto pol = polarization_set(a);
    for (const Element& x : pol)
        for (std::size_t yi = 0; yi < a.dim(); ++yi)
            for (std::size_t zi = 0; zi < a.dim(); ++zi) {
                const Element y = basis_element(a, yi);
                const Element z = basis_element(a, zi);
                const Element lhs = jacobian_binary(a, x, y, product(a, {x, z}));
                const Element rhs = product(a, {jacobian_binary(a, x, y, z), x});
                ++rep.checked_count;
                Element residual = lhs - rhs;
                if (!is_zero(residual.coords)) {
                    rep.holds = false;
                    rep.witness = IdentityWitness{{x.coords, y.coords, z.coords},
                                                  std::move(residual.coords),
                                                  "J(x,y,xz) != J(x,y,z)x"};
                    return rep;
                }
            }
    return rep;
}

/// n-ary Jacobian J(x1..xn; y2..yn) =
/// [[x1..xn],y2..yn] - sum_i [x1,..,[xi,y2..yn],..,xn].
inline Element nary_jacobian(const NaryAlgebra& a, std::span<const Element> xs,
                             std::span<const Element> ys) {
    const std::size_t n = a.arity();
    if (xs.size() != n || ys.size() + 1 != n)
        throw std::invalid_argument("nary_jacobian: argument count mismatch");
    std::vector<Element> outer;
    outer.push_back(product(a, xs));
    for (const Element& y : ys) outer.push_back(y);
    Element result = product(a, std::span<const Element>(outer));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Element> inner;
        inner.push_back(xs[i]);
        for (const Element& y : ys) inner.push_back(y);
        std::vector<Element> args(xs.begin(), xs.end());
        args[i] = product(a, std::span<const Element>(inner));
        result = result - product(a, std::span<const Element>(args));
    }
    return result;
}

/// Matrix of z -> [z, x2, .., xn] in the algebra basis.
inline LinearMap right_mult_operator(const NaryAlgebra& a, std::span<const Element> tail) {
    const std::size_t n = a.arity();
    if (tail.size() + 1 != n)
        throw std::invalid_argument("right_mult_operator: expected " + std::to_string(n - 1) +
                                    " arguments");
    Matrix m(a.dim(), a.dim());
    std::vector<const Vec*> ptrs(n);
    for (std::size_t s = 0; s < tail.size(); ++s) ptrs[s + 1] = &tail[s].coords;
    for (std::size_t j = 0; j < a.dim(); ++j) {
        const Vec ej = basis_element(a, j).coords;
        ptrs[0] = &ej;
        Vec col = product_coords(a, ptrs);
        for (std::size_t i = 0; i < a.dim(); ++i) m(i, j) = std::move(col[i]);
    }
    return LinearMap(std::move(m));
}

namespace detail {

/// Right-multiplication matrices for every basis tail tuple, indexed by the
/// lexicographic linearization of (i2..in).
inline std::vector<LinearMap> basis_right_mult_table(const NaryAlgebra& a) {
    const std::size_t n = a.arity();
    const std::size_t d = a.dim();
    std::size_t count = 1;
    for (std::size_t s = 0; s + 1 < n; ++s) count *= d;
    std::vector<LinearMap> table;
    table.reserve(count);
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t flat = 0; flat < count; ++flat) {
        std::size_t rem = flat;
        for (std::size_t s = n - 1; s >= 1; --s) {
            idx[s] = rem % d;
            rem /= d;
        }
        Matrix m(d, d);
        for (std::size_t j = 0; j < d; ++j) {
            idx[0] = j;
            for (const auto& e : a.basis_product(idx)) m(e.index, j) = e.coeff;
        }
        table.push_back(LinearMap(std::move(m)));
    }
    return table;
}

}  // namespace detail

/// Checks the n-ary Malcev identity
///   -J(z R_x, x2..xn; y2..yn) = J(z, x2..xn; y2..yn) R_x
/// with every x_i over the polarization set and z, y_j over the basis.
/// Equivalently, with M_J the matrix of z -> J(z, x; y), it checks
/// M_X M_J + M_J M_X = 0 for every substitution.
inline IdentityReport check_nary_malcev(const NaryAlgebra& a) {
    const std::size_t n = a.arity();
    if (n < 3) throw std::invalid_argument("check_nary_malcev: arity must be >= 3");
    const std::size_t d = a.dim();
    IdentityReport rep{"nary-malcev", true, 0, std::nullopt};

    const auto pol = polarization_set(a);
    const auto ry_table = detail::basis_right_mult_table(a);
    std::size_t y_count = 1;
    for (std::size_t s = 0; s + 1 < n; ++s) y_count *= d;

    std::vector<std::size_t> xsel(n - 1, 0);
    while (true) {
        std::vector<Element> xs;
        for (std::size_t s = 0; s + 1 < n; ++s) xs.push_back(pol[xsel[s]]);
        const LinearMap rx = right_mult_operator(a, xs);

        for (std::size_t yflat = 0; yflat < y_count; ++yflat) {
            std::vector<Element> ys;
            {
                std::size_t rem = yflat;
                std::vector<std::size_t> yidx(n - 1);
                for (std::size_t s = n - 1; s-- > 0;) {
                    yidx[s] = rem % d;
                    rem /= d;
                }
                for (std::size_t s = 0; s + 1 < n; ++s) ys.push_back(basis_element(a, yidx[s]));
            }
            const LinearMap& ry = ry_table[yflat];

            // M_J = R_Y R_X - R_X R_Y - sum_i R_{x2,..,[xi,Y],..,xn}
            Matrix mj = ry.mat * rx.mat - rx.mat * ry.mat;
            for (std::size_t i = 0; i < n - 1; ++i) {
                std::vector<Element> inner;
                inner.push_back(xs[i]);
                for (const Element& y : ys) inner.push_back(y);
                std::vector<Element> tail = xs;
                tail[i] = product(a, std::span<const Element>(inner));
                mj = mj - right_mult_operator(a, tail).mat;
            }
            const Matrix lhs = rx.mat * mj + mj * rx.mat;
            rep.checked_count += d;
            if (!lhs.is_zero()) {
                for (std::size_t zi = 0; zi < d; ++zi) {
                    Vec col(d);
                    bool nonzero = false;
                    for (std::size_t r = 0; r < d; ++r) {
                        col[r] = lhs(r, zi);
                        nonzero = nonzero || !col[r].is_zero();
                    }
                    if (!nonzero) continue;
                    std::vector<Vec> args;
                    args.push_back(basis_element(a, zi).coords);
                    for (const Element& x : xs) args.push_back(x.coords);
                    for (const Element& y : ys) args.push_back(y.coords);
                    rep.holds = false;
                    rep.witness = IdentityWitness{std::move(args), std::move(col),
                                                  "-J(zR_x, x..; y..) != J(z, x..; y..)R_x"};
                    return rep;
                }
            }
        }

        std::size_t s = n - 1;
        bool done = true;
        while (s-- > 0) {
            if (++xsel[s] < pol.size()) {
                done = false;
                break;
            }
            xsel[s] = 0;
        }
        if (done) break;
    }
    return rep;
}

/// Checks J = 0 on all basis argument tuples (sufficient by multilinearity).
inline IdentityReport check_filippov(const NaryAlgebra& a) {
    const std::size_t n = a.arity();
    if (n < 3) throw std::invalid_argument("check_filippov: arity must be >= 3");
    const std::size_t d = a.dim();
    IdentityReport rep{"filippov", true, 0, std::nullopt};
    std::vector<std::size_t> idx(2 * n - 1, 0);
    while (true) {
        std::vector<Element> xs, ys;
        for (std::size_t s = 0; s < n; ++s) xs.push_back(basis_element(a, idx[s]));
        for (std::size_t s = n; s < 2 * n - 1; ++s) ys.push_back(basis_element(a, idx[s]));
        Element j = nary_jacobian(a, xs, ys);
        ++rep.checked_count;
        if (!is_zero(j.coords)) {
            std::vector<Vec> args;
            for (const Element& x : xs) args.push_back(x.coords);
            for (const Element& y : ys) args.push_back(y.coords);
            rep.holds = false;
            rep.witness =
                IdentityWitness{std::move(args), std::move(j.coords), "nonzero n-ary Jacobian"};
            return rep;
        }
        std::size_t s = idx.size();
        bool done = true;
        while (s-- > 0) {
            if (++idx[s] < d) {
                done = false;
                break;
            }
            idx[s] = 0;
        }
        if (done) break;
    }
    return rep;
}

}  // namespace malcev

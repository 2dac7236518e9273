#pragma once

#include <array>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "malcev/algebra.hpp"
#include "malcev/errors.hpp"

namespace malcev {

using TensorEntries = std::vector<std::pair<std::vector<std::size_t>, SparseVec>>;

namespace detail {

inline int permutation_sign(std::span<const std::size_t> perm) {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

/// Expands a generator list to the full signed orbit under slot permutations.
/// Conflicting images of the same tuple are rejected.
inline TensorEntries complete_skew(std::size_t arity, const TensorEntries& generators) {
    std::map<std::vector<std::size_t>, SparseVec> table;
    std::vector<std::size_t> slots(arity);
    for (std::size_t s = 0; s < arity; ++s) slots[s] = s;
    for (const auto& [idx, value] : generators) {
        std::vector<std::size_t> perm = slots;
        do {
            std::vector<std::size_t> image(arity);
            for (std::size_t s = 0; s < arity; ++s) image[s] = idx[perm[s]];
            SparseVec v = normalize_sparse(value);
            if (permutation_sign(perm) < 0)
                for (auto& e : v) e.coeff = -e.coeff;
            auto [it, inserted] = table.emplace(std::move(image), v);
            if (!inserted && it->second != v)
                throw std::invalid_argument(
                    "complete_skew: generators give conflicting values for one tuple");
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return TensorEntries(table.begin(), table.end());
}

}  // namespace detail

/// The simple non-Lie Malcev algebra of dimension 7 in its split basis
/// {h, x, y, z, x', y', z'}.
inline NaryAlgebra make_m7() {
    const std::size_t H = 0, X = 1, Y = 2, Z = 3, XP = 4, YP = 5, ZP = 6;
    auto one = [](std::size_t i, long long c) { return SparseVec{{i, Rational(c)}}; };
    TensorEntries gen = {
        {{H, X}, one(X, 2)},    {{H, Y}, one(Y, 2)},    {{H, Z}, one(Z, 2)},
        {{H, XP}, one(XP, -2)}, {{H, YP}, one(YP, -2)}, {{H, ZP}, one(ZP, -2)},
        {{X, XP}, one(H, 1)},   {{Y, YP}, one(H, 1)},   {{Z, ZP}, one(H, 1)},
        {{X, Y}, one(ZP, 2)},   {{Y, Z}, one(XP, 2)},   {{Z, X}, one(YP, 2)},
        {{XP, YP}, one(Z, -2)}, {{YP, ZP}, one(X, -2)}, {{ZP, XP}, one(Y, -2)},
    };
    return NaryAlgebra("M7", 2, 7, {"h", "x", "y", "z", "x'", "y'", "z'"},
                       detail::complete_skew(2, gen));
}

/// sl2 in the Chevalley basis {e, f, h}: [h,e]=2e, [h,f]=-2f, [e,f]=h.
inline NaryAlgebra make_sl2() {
    auto one = [](std::size_t i, long long c) { return SparseVec{{i, Rational(c)}}; };
    TensorEntries gen = {
        {{2, 0}, one(0, 2)},
        {{2, 1}, one(1, -2)},
        {{0, 1}, one(2, 1)},
    };
    return NaryAlgebra("sl2", 2, 3, {"e", "f", "h"}, detail::complete_skew(2, gen));
}

/// Three-fold Cayley-Dickson doubling of the rationals, relabeled to the
/// basis {1, a, b, ab, c, ac, bc, abc}, with conjugation and norm form.
struct CompositionAlgebra {
    NaryAlgebra algebra;
    LinearMap conjugation;
    Matrix form;
    /// Per i in {2..8} (index 0 holds i=2): the resolved (j,k,l,m,s,t),
    /// 0-based into the basis.
    std::array<std::array<std::size_t, 6>, 7> relation_assignment{};

    Vec mul(const Vec& x, const Vec& y) const {
        const Vec* args[2] = {&x, &y};
        return product_coords(algebra, args);
    }

    Vec conj(const Vec& x) const { return conjugation.apply(x); }

    Rational form_value(const Vec& x, const Vec& y) const {
        Rational r;
        for (std::size_t i = 0; i < 8; ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < 8; ++j) r.add_product(x[i] * form(i, j), y[j]);
        }
        return r;
    }

    Rational norm(const Vec& x) const { return form_value(x, x); }
};

namespace detail {

inline Vec cd_conj(const Vec& x) {
    if (x.size() == 1) return x;
    const std::size_t h = x.size() / 2;
    Vec out(x.size());
    Vec a(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(h));
    Vec ca = cd_conj(a);
    for (std::size_t i = 0; i < h; ++i) out[i] = ca[i];
    for (std::size_t i = h; i < x.size(); ++i) out[i] = -x[i];
    return out;
}

/// Doubling product (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)).
inline Vec cd_mul(const Vec& x, const Vec& y) {
    if (x.size() == 1) return Vec{x[0] * y[0]};
    const std::size_t h = x.size() / 2;
    auto lo = [h](const Vec& v) {
        return Vec(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(h));
    };
    auto hi = [h](const Vec& v) {
        return Vec(v.begin() + static_cast<std::ptrdiff_t>(h), v.end());
    };
    const Vec a = lo(x), b = hi(x), c = lo(y), d = hi(y);
    const Vec ac = cd_mul(a, c);
    const Vec db = cd_mul(cd_conj(d), b);
    const Vec da = cd_mul(d, a);
    const Vec bc = cd_mul(b, cd_conj(c));
    Vec out(x.size());
    for (std::size_t i = 0; i < h; ++i) out[i] = ac[i] - db[i];
    for (std::size_t i = 0; i < h; ++i) out[h + i] = da[i] + bc[i];
    return out;
}

/// The 21 product relations tying (i,j,k,l,m,s,t) together; slot ids are
/// 0..6 in that order, each row is (target, factor1, factor2).
inline constexpr std::array<std::array<std::size_t, 3>, 21> kOctonionRelations = {{
    {0, 1, 2}, {0, 3, 4}, {0, 5, 6},
    {1, 5, 4}, {1, 2, 0}, {1, 6, 3},
    {2, 0, 1}, {2, 4, 6}, {2, 5, 3},
    {3, 4, 0}, {3, 2, 5}, {3, 1, 6},
    {4, 0, 3}, {4, 6, 2}, {4, 1, 5},
    {5, 3, 2}, {5, 6, 0}, {5, 4, 1},
    {6, 0, 5}, {6, 2, 4}, {6, 3, 1},
}};

}  // namespace detail

inline CompositionAlgebra make_octonions() {
    const std::size_t d = 8;
    auto unit = [d](std::size_t i) {
        Vec v(d);
        v[i] = 1;
        return v;
    };
    // Generators a, b, c are the three doubling imaginary units.
    const Vec ea = unit(1), eb = unit(2), ec = unit(4);
    std::vector<Vec> basis(d);
    basis[0] = unit(0);
    basis[1] = ea;
    basis[2] = eb;
    basis[3] = detail::cd_mul(ea, eb);
    basis[4] = ec;
    basis[5] = detail::cd_mul(ea, ec);
    basis[6] = detail::cd_mul(eb, ec);
    basis[7] = detail::cd_mul(basis[3], ec);

    // Each basis vector must be a signed unit; record (position, sign).
    std::vector<std::size_t> pos(d);
    std::vector<Rational> sgn(d);
    for (std::size_t p = 0; p < d; ++p) {
        std::size_t nonzero = 0;
        for (std::size_t u = 0; u < d; ++u) {
            if (basis[p][u].is_zero()) continue;
            ++nonzero;
            pos[p] = u;
            sgn[p] = basis[p][u];
        }
        if (nonzero != 1 || sgn[p].abs() != Rational(1))
            throw ConsistencyError("make_octonions: basis vector is not a signed unit");
    }
    auto to_basis_coords = [&](const Vec& w) {
        Vec out(d);
        for (std::size_t p = 0; p < d; ++p) out[p] = sgn[p] * w[pos[p]];
        return out;
    };

    std::vector<std::string> labels = {"e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8"};
    TensorEntries entries;
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = 0; q < d; ++q) {
            Vec prod = to_basis_coords(detail::cd_mul(basis[p], basis[q]));
            SparseVec sv = sparse_from_dense(prod);
            if (!sv.empty()) entries.push_back({{p, q}, std::move(sv)});
        }

    CompositionAlgebra comp{NaryAlgebra("octonions", 2, d, labels, entries), LinearMap(), Matrix(),
                            {}};

    // Conjugation in the relabeled basis.
    Matrix conj_mat(d, d);
    for (std::size_t p = 0; p < d; ++p) {
        Vec col = to_basis_coords(detail::cd_conj(basis[p]));
        for (std::size_t i = 0; i < d; ++i) conj_mat(i, p) = std::move(col[i]);
    }
    comp.conjugation = LinearMap(std::move(conj_mat));
    if (!(comp.conjugation * comp.conjugation == LinearMap::identity(d)))
        throw ConsistencyError("make_octonions: conjugation is not an involution");
    for (std::size_t p = 0; p < d; ++p) {
        Vec img = comp.conj(unit(p));
        Vec expect = unit(p);
        if (p > 0) expect[p] = -1;
        if (img != expect)
            throw ConsistencyError("make_octonions: conjugation must fix e1 and negate e2..e8");
    }

    // Symmetric form (x,y) = 1/2 (x conj(y) + y conj(x)), read off along e1.
    Matrix form(d, d);
    const Rational half(1, 2);
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = 0; q < d; ++q) {
            Vec s = comp.mul(unit(p), comp.conj(unit(q)));
            Vec t = comp.mul(unit(q), comp.conj(unit(p)));
            form(p, q) = half * (s[0] + t[0]);
        }
    if (!(form == Matrix::identity(d)))
        throw ConsistencyError("make_octonions: basis is not orthonormal for the form");
    comp.form = form;

    // Resolve the relation family for each i in {2..8}.
    for (std::size_t i = 1; i < d; ++i) {
        std::vector<std::size_t> others;
        for (std::size_t u = 1; u < d; ++u)
            if (u != i) others.push_back(u);
        bool found = false;
        std::array<std::size_t, 6> best{};
        do {
            std::array<std::size_t, 7> assign{};
            assign[0] = i;
            for (std::size_t s = 0; s < 6; ++s) assign[s + 1] = others[s];
            bool ok = true;
            for (const auto& rel : detail::kOctonionRelations) {
                const std::size_t target = assign[rel[0]];
                const std::size_t f1 = assign[rel[1]];
                const std::size_t f2 = assign[rel[2]];
                const std::size_t idx[2] = {f1, f2};
                const SparseVec& prod = comp.algebra.basis_product(idx);
                if (prod.size() != 1 || prod[0].index != target || !prod[0].coeff.is_one()) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                found = true;
                for (std::size_t s = 0; s < 6; ++s) best[s] = others[s];
                break;
            }
        } while (std::next_permutation(others.begin(), others.end()));
        if (!found)
            throw ConsistencyError("make_octonions: no index assignment satisfies the relations");
        comp.relation_assignment[i - 1] = best;
    }

    // x conj(x) = n(x) e1 on the polarization set.
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = p; q < d; ++q) {
            Vec x = unit(p);
            x[q] += 1;
            Vec prod = comp.mul(x, comp.conj(x));
            Vec expect(d);
            expect[0] = comp.norm(x);
            if (prod != expect)
                throw ConsistencyError("make_octonions: x conj(x) != n(x) e1");
        }

    return comp;
}

/// The simple ternary Malcev algebra on the 8-dimensional composition
/// algebra: [x,y,z] = (x conj(y)) z - (y,z)x + (x,z)y - (x,y)z.
inline NaryAlgebra make_m8(const CompositionAlgebra& comp) {
    const std::size_t d = 8;
    auto unit = [d](std::size_t i) {
        Vec v(d);
        v[i] = 1;
        return v;
    };
    TensorEntries entries;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                Vec v = comp.mul(comp.mul(unit(i), comp.conj(unit(j))), unit(k));
                v[i] -= comp.form(j, k);
                v[j] += comp.form(i, k);
                v[k] -= comp.form(i, j);
                SparseVec sv = sparse_from_dense(v);
                if (!sv.empty()) entries.push_back({{i, j, k}, std::move(sv)});
            }
    return NaryAlgebra("M8", 3, d,
                       {"e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8"}, entries);
}

inline NaryAlgebra make_m8() { return make_m8(make_octonions()); }

/// Ternary vector-product algebra on Q^4: [e_i,e_j,e_k] = eps(i,j,k,l) e_l.
/// A Filippov algebra, shipped as the toy with vanishing n-ary Jacobian.
inline NaryAlgebra make_cross4() {
    TensorEntries gen;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            for (std::size_t k = j + 1; k < 4; ++k) {
                std::size_t l = 0 + 1 + 2 + 3 - i - j - k;
                const std::size_t perm[4] = {i, j, k, l};
                const int sign = detail::permutation_sign(perm);
                gen.push_back({{i, j, k}, {{l, Rational(sign)}}});
            }
    return NaryAlgebra("cross4", 3, 4, {"e1", "e2", "e3", "e4"},
                       detail::complete_skew(3, gen));
}

/// Direct sum of two algebras of equal arity: mixed basis tuples multiply
/// to zero. Basis labels are namespaced by the summand names.
inline NaryAlgebra direct_sum(const NaryAlgebra& a, const NaryAlgebra& b) {
    if (a.arity() != b.arity())
        throw std::invalid_argument("direct_sum: arity mismatch");
    std::vector<std::string> labels;
    for (const auto& l : a.basis_labels()) labels.push_back(a.name() + "." + l);
    for (const auto& l : b.basis_labels()) labels.push_back(b.name() + "." + l);
    TensorEntries entries = a.nonzero_entries();
    TensorEntries b_entries = b.nonzero_entries();
    for (auto& [idx, value] : b_entries) {
        for (auto& s : idx) s += a.dim();
        for (auto& e : value) e.index += a.dim();
        entries.push_back({std::move(idx), std::move(value)});
    }
    return NaryAlgebra(a.name() + "+" + b.name(), a.arity(), a.dim() + b.dim(), labels, entries);
}

inline NaryAlgebra zero_algebra(std::size_t arity, std::size_t dim) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i + 1));
    return NaryAlgebra("zero", arity, dim, labels, {});
}

inline NaryAlgebra scale_algebra(const NaryAlgebra& a, const Rational& factor) {
    TensorEntries entries = a.nonzero_entries();
    for (auto& [idx, value] : entries)
        for (auto& e : value) e.coeff *= factor;
    return NaryAlgebra(a.name() + "*" + factor.str(), a.arity(), a.dim(), a.basis_labels(),
                       entries);
}

// ---------------------------------------------------------------------------
// JSON interchange. Schema:
//   {"name": str, "arity": int, "dim": int, "basis": [labels],
//    "products": [{"args": [labels], "value": {label: "p/q"}}]}
// Missing tuples are zero; the loader completes nothing.
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json algebra_to_json(const NaryAlgebra& a) {
    nlohmann::ordered_json j;
    j["name"] = a.name();
    j["arity"] = a.arity();
    j["dim"] = a.dim();
    j["basis"] = a.basis_labels();
    nlohmann::ordered_json products = nlohmann::ordered_json::array();
    for (const auto& [idx, value] : a.nonzero_entries()) {
        nlohmann::ordered_json entry;
        nlohmann::ordered_json args = nlohmann::ordered_json::array();
        for (std::size_t s : idx) args.push_back(a.basis_labels()[s]);
        entry["args"] = args;
        nlohmann::ordered_json val;
        for (const auto& e : value) val[a.basis_labels()[e.index]] = e.coeff.str();
        entry["value"] = val;
        products.push_back(entry);
    }
    j["products"] = products;
    return j;
}

inline NaryAlgebra algebra_from_json(const nlohmann::json& j, const std::string& context) {
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument(context + ": " + msg);
    };
    if (!j.is_object()) fail("top level must be an object");
    for (const char* field : {"name", "arity", "dim", "basis", "products"})
        if (!j.contains(field)) fail(std::string("missing field '") + field + "'");
    if (!j["name"].is_string()) fail("'name' must be a string");
    if (!j["arity"].is_number_unsigned()) fail("'arity' must be a non-negative integer");
    if (!j["dim"].is_number_unsigned()) fail("'dim' must be a non-negative integer");
    if (!j["basis"].is_array()) fail("'basis' must be an array");
    if (!j["products"].is_array()) fail("'products' must be an array");

    const std::size_t arity = j["arity"].get<std::size_t>();
    const std::size_t dim = j["dim"].get<std::size_t>();
    std::vector<std::string> labels;
    for (const auto& l : j["basis"]) {
        if (!l.is_string()) fail("'basis' entries must be strings");
        labels.push_back(l.get<std::string>());
    }
    if (labels.size() != dim) fail("'basis' length does not match 'dim'");

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (index.count(labels[i])) fail("duplicate basis label '" + labels[i] + "'");
        index[labels[i]] = i;
    }

    TensorEntries entries;
    std::size_t pos = 0;
    for (const auto& p : j["products"]) {
        const std::string where = "products[" + std::to_string(pos) + "]";
        if (!p.is_object() || !p.contains("args") || !p.contains("value"))
            fail(where + " must be an object with 'args' and 'value'");
        if (!p["args"].is_array() || p["args"].size() != arity)
            fail(where + ".args must list exactly " + std::to_string(arity) + " labels");
        std::vector<std::size_t> idx;
        std::size_t apos = 0;
        for (const auto& arg : p["args"]) {
            if (!arg.is_string())
                fail(where + ".args[" + std::to_string(apos) + "] must be a string");
            auto it = index.find(arg.get<std::string>());
            if (it == index.end())
                fail(where + ".args[" + std::to_string(apos) + "]: unknown basis label '" +
                     arg.get<std::string>() + "'");
            idx.push_back(it->second);
            ++apos;
        }
        if (!p["value"].is_object()) fail(where + ".value must be an object");
        SparseVec value;
        for (const auto& [label, scalar] : p["value"].items()) {
            auto it = index.find(label);
            if (it == index.end())
                fail(where + ".value: unknown basis label '" + label + "'");
            if (!scalar.is_string()) fail(where + ".value['" + label + "'] must be a string");
            try {
                value.push_back({it->second, Rational::parse(scalar.get<std::string>())});
            } catch (const std::exception& e) {
                fail(where + ".value['" + label + "']: " + e.what());
            }
        }
        entries.push_back({std::move(idx), std::move(value)});
        ++pos;
    }
    return NaryAlgebra(j["name"].get<std::string>(), arity, dim, labels, entries);
}

inline void save_algebra(const NaryAlgebra& a, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("save_algebra: cannot open '" + path + "'");
    out << algebra_to_json(a).dump(2) << '\n';
    if (!out) throw std::invalid_argument("save_algebra: write failed for '" + path + "'");
}

inline NaryAlgebra load_algebra(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_algebra: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
    return algebra_from_json(j, path);
}

// ---------------------------------------------------------------------------
// Named catalog for the CLI.
// ---------------------------------------------------------------------------

struct CatalogEntry {
    std::string name;
    std::size_t arity;
    std::size_t dim;
    std::string summary;
};

inline std::vector<CatalogEntry> catalog_entries() {
    return {
        {"M7", 2, 7, "simple non-Lie Malcev algebra (split basis)"},
        {"M8", 3, 8, "simple ternary Malcev algebra on the octonions"},
        {"cross4", 3, 4, "ternary vector-product Filippov algebra"},
        {"octonions", 2, 8, "composition algebra in the 1,a,b,ab,c,... basis"},
        {"sl2", 2, 3, "split 3-dimensional simple Lie algebra"},
        {"sl2+M7", 2, 10, "semisimple non-Lie Malcev direct sum"},
    };
}

inline std::optional<NaryAlgebra> make_catalog_algebra(const std::string& name) {
    if (name == "M7") return make_m7();
    if (name == "M8") return make_m8();
    if (name == "cross4") return make_cross4();
    if (name == "octonions") return make_octonions().algebra;
    if (name == "sl2") return make_sl2();
    if (name == "sl2+M7") return direct_sum(make_sl2(), make_m7());
    return std::nullopt;
}

}  // namespace malcev

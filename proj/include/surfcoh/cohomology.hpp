#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "surfcoh/diagonal.hpp"
#include "surfcoh/resolution.hpp"
#include "surfcoh/smith.hpp"

namespace surfcoh {

// ---------------------------------------------------------------------------
// Coefficient systems Z_{S_1 (x) ... (x) S_n}.
// ---------------------------------------------------------------------------

struct CoefficientSystem {
    std::vector<int> genera;
    std::vector<SignSet> sets;

    CoefficientSystem() = default;
    CoefficientSystem(std::vector<int> g, std::vector<SignSet> s)
        : genera(std::move(g)), sets(std::move(s)) {
        if (genera.size() != sets.size())
            throw std::invalid_argument("coefficient system: factor count mismatch");
        for (std::size_t i = 0; i < genera.size(); ++i)
            if (sets[i].genus != genera[i])
                throw std::invalid_argument("coefficient system: sign set has wrong genus");
    }

    static CoefficientSystem trivial(std::vector<int> genera) {
        std::vector<SignSet> sets;
        for (int g : genera) sets.push_back(SignSet(g, {}));
        return CoefficientSystem(std::move(genera), std::move(sets));
    }

    [[nodiscard]] bool all_empty() const {
        for (const auto& s : sets)
            if (!s.empty()) return false;
        return true;
    }

    [[nodiscard]] int sign_of(const std::vector<Word>& words) const {
        int sign = 1;
        for (std::size_t i = 0; i < sets.size(); ++i) sign *= word_sign(words[i], sets[i]);
        return sign;
    }

    friend bool operator==(const CoefficientSystem&, const CoefficientSystem&) = default;
};

inline CoefficientSystem symmetric_difference(const CoefficientSystem& a,
                                              const CoefficientSystem& b) {
    if (a.genera != b.genera)
        throw std::invalid_argument("coefficient systems over different groups");
    std::vector<SignSet> sets;
    for (std::size_t i = 0; i < a.sets.size(); ++i)
        sets.push_back(symmetric_difference(a.sets[i], b.sets[i]));
    return CoefficientSystem(a.genera, std::move(sets));
}

// Factors split by `|`, empty factor written `-`: e.g. "a1,b2|a3".
inline std::string format_coefficient_system(const CoefficientSystem& c) {
    std::string out;
    for (std::size_t i = 0; i < c.sets.size(); ++i) {
        if (i) out += '|';
        out += format_sign_set(c.sets[i]);
    }
    return out;
}

inline CoefficientSystem parse_coefficient_system(std::string_view text,
                                                  const std::vector<int>& genera) {
    std::vector<SignSet> sets;
    std::size_t pos = 0, fac = 0;
    while (true) {
        std::size_t bar = text.find('|', pos);
        std::string_view piece =
            bar == std::string_view::npos ? text.substr(pos) : text.substr(pos, bar - pos);
        if (fac >= genera.size()) throw std::invalid_argument("too many coefficient factors");
        sets.push_back(parse_sign_set(piece, genera[fac]));
        ++fac;
        if (bar == std::string_view::npos) break;
        pos = bar + 1;
    }
    if (fac != genera.size()) throw std::invalid_argument("wrong number of coefficient factors");
    return CoefficientSystem(genera, std::move(sets));
}

// ---------------------------------------------------------------------------
// Cochains: pi-equivariant maps M_k -> Z_S, stored by their basis values.
// ---------------------------------------------------------------------------

class Cochain {
  public:
    Cochain(CoefficientSystem coeffs, int degree)
        : coeffs_(std::move(coeffs)), degree_(degree) {}

    static Cochain dual_basis(const CoefficientSystem& coeffs, const TensorSymbol& sym) {
        Cochain c(coeffs, sym.degree());
        c.set(sym, 1);
        return c;
    }

    [[nodiscard]] const std::vector<int>& genera() const { return coeffs_.genera; }
    [[nodiscard]] const CoefficientSystem& coefficients() const { return coeffs_; }
    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] bool is_zero() const { return values_.empty(); }
    [[nodiscard]] const std::map<TensorSymbol, Int>& values() const { return values_; }

    [[nodiscard]] Int value(const TensorSymbol& sym) const {
        auto it = values_.find(sym);
        return it == values_.end() ? Int(0) : it->second;
    }

    void set(const TensorSymbol& sym, const Int& v) {
        if (sym.degree() != degree_) throw std::invalid_argument("cochain degree mismatch");
        if (v == 0)
            values_.erase(sym);
        else
            values_[sym] = v;
    }

    void add(const TensorSymbol& sym, const Int& v) { set(sym, value(sym) + v); }

    Cochain& operator+=(const Cochain& o) {
        require_compatible(o);
        for (const auto& [s, v] : o.values_) add(s, v);
        return *this;
    }
    Cochain& operator-=(const Cochain& o) {
        require_compatible(o);
        for (const auto& [s, v] : o.values_) add(s, -v);
        return *this;
    }
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend Cochain operator*(const Int& k, Cochain a) {
        a.scale(k);
        return a;
    }
    void scale(const Int& k) {
        if (k == 0) {
            values_.clear();
            return;
        }
        for (auto& [s, v] : values_) v *= k;
    }

    friend bool operator==(const Cochain& a, const Cochain& b) {
        return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_ && a.values_ == b.values_;
    }

    // Evaluation through the coefficient system.
    [[nodiscard]] Int eval(const ChainElement& x) const {
        if (x.genera() != coeffs_.genera) throw std::invalid_argument("cochain/chain genera mismatch");
        Int total = 0;
        for (const auto& [k, c] : x.terms()) {
            Int v = value(k.symbol);
            if (v == 0) continue;
            total += c * coeffs_.sign_of(k.words) * v;
        }
        return total;
    }

  private:
    void require_compatible(const Cochain& o) const {
        if (degree_ != o.degree_ || !(coeffs_ == o.coeffs_))
            throw std::invalid_argument("cochains live in different complexes");
    }

    CoefficientSystem coeffs_;
    int degree_;
    std::map<TensorSymbol, Int> values_;
};

// Text form: lines `<int> <symbol(x)...>`.
inline std::string format_cochain(const Cochain& c) {
    std::string out;
    for (const auto& [s, v] : c.values()) {
        out += v.str();
        out += ' ';
        out += format_tensor_symbol(s);
        out += '\n';
    }
    return out;
}

inline Cochain parse_cochain(std::string_view text, const CoefficientSystem& coeffs) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<int> degree;
    std::vector<std::pair<TensorSymbol, Int>> entries;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t space = line.find(' ');
        if (space == std::string::npos) throw std::invalid_argument("malformed cochain line: " + line);
        Int v(line.substr(0, space));
        TensorSymbol sym = parse_tensor_symbol(
            std::string_view(line).substr(space + 1), coeffs.genera);
        if (!degree) degree = sym.degree();
        if (sym.degree() != *degree)
            throw std::invalid_argument("cochain lines of mixed degree");
        entries.emplace_back(std::move(sym), std::move(v));
    }
    Cochain c(coeffs, degree.value_or(0));
    for (auto& [s, v] : entries) c.add(s, v);
    return c;
}

// Hom coboundary with the standard sign: (delta f)(x) = (-1)^{deg f + 1} f(dx),
// the unique convention making d_1^*(chi^*) come out as +2 sigma^*.
inline Cochain coboundary(const Cochain& f) {
    Cochain r(f.coefficients(), f.degree() + 1);
    int sign = (f.degree() + 1) % 2 == 0 ? 1 : -1;
    for (const TensorSymbol& x : basis_of(f.genera(), f.degree() + 1)) {
        Int v = f.eval(tensor_differential(ChainElement::basis(f.genera(), x)));
        if (v != 0) r.set(x, sign * v);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Integer cohomology via Smith normal form.
// ---------------------------------------------------------------------------

struct ClassCoordinates {
    std::vector<Int> torsion;    // one per invariant factor > 1, reduced mod it
    std::vector<Int> free_part;

    [[nodiscard]] bool is_zero() const {
        for (const Int& t : torsion)
            if (t != 0) return false;
        for (const Int& f : free_part)
            if (f != 0) return false;
        return true;
    }
};

// H^degree = ker(delta_degree) / im(delta_{degree-1}), with representative
// cocycles and enough transform data to reduce an arbitrary cocycle to
// coordinates in the free + torsion basis.
struct CohomologyPresentation {
    CoefficientSystem coeffs;
    int degree = 0;
    std::vector<TensorSymbol> basis;           // of C^degree
    std::size_t kernel_dim = 0;
    std::size_t free_rank = 0;
    std::vector<Int> torsion;                  // invariant factors > 1, divisibility order
    std::vector<Cochain> torsion_representatives;
    std::vector<Cochain> free_representatives;

    // coordinate machinery
    IntMatrix kernel_columns;      // |basis| x kernel_dim
    IntMatrix cocycle_transform;   // Vinv of delta_degree; first `cocycle_rank` rows must kill cocycles
    std::size_t cocycle_rank = 0;
    IntMatrix quotient_transform;  // U of the image matrix, kernel_dim x kernel_dim
    std::vector<Int> invariant_factors;  // including 1s, length = image rank
};

// Matrix of delta_k : C^k -> C^{k+1} in the dual bases.
inline IntMatrix coboundary_matrix(const CoefficientSystem& coeffs, int k) {
    const auto rows = basis_of(coeffs.genera, k + 1);
    const auto cols = basis_of(coeffs.genera, k);
    std::map<TensorSymbol, std::size_t> col_index;
    for (std::size_t j = 0; j < cols.size(); ++j) col_index[cols[j]] = j;
    IntMatrix a(rows.size(), std::vector<Int>(cols.size(), 0));
    const int sign = (k + 1) % 2 == 0 ? 1 : -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ChainElement dx = tensor_differential(ChainElement::basis(coeffs.genera, rows[i]));
        for (const auto& [key, c] : dx.terms()) {
            auto it = col_index.find(key.symbol);
            if (it == col_index.end()) continue;
            a[i][it->second] += sign * c * coeffs.sign_of(key.words);
        }
    }
    return a;
}

inline CohomologyPresentation cohomology_group(const CoefficientSystem& coeffs, int degree) {
    CohomologyPresentation p;
    p.coeffs = coeffs;
    p.degree = degree;
    p.basis = basis_of(coeffs.genera, degree);
    const std::size_t dim = p.basis.size();

    const auto rows_above = basis_of(coeffs.genera, degree + 1);
    if (rows_above.empty()) {
        p.cocycle_rank = 0;
        p.cocycle_transform = identity_matrix(dim);
        p.kernel_dim = dim;
        p.kernel_columns = identity_matrix(dim);
    } else {
        SmithDecomposition snf = smith_normal_form(coboundary_matrix(coeffs, degree));
        p.cocycle_rank = snf.rank;
        p.cocycle_transform = snf.Vinv;
        p.kernel_dim = dim - snf.rank;
        p.kernel_columns.assign(dim, std::vector<Int>(p.kernel_dim, 0));
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t j = 0; j < p.kernel_dim; ++j)
                p.kernel_columns[r][j] = snf.V[r][snf.rank + j];
    }

    // image of delta_{degree-1} expressed in kernel coordinates
    const auto below = basis_of(coeffs.genera, degree - 1);
    IntMatrix image_coords(p.kernel_dim, std::vector<Int>(below.size(), 0));
    if (!below.empty() && dim > 0) {
        IntMatrix d_below = coboundary_matrix(coeffs, degree - 1);  // dim x |below|
        for (std::size_t j = 0; j < below.size(); ++j) {
            std::vector<Int> col(dim);
            for (std::size_t r = 0; r < dim; ++r) col[r] = d_below[r][j];
            std::vector<Int> t = matrix_vector(p.cocycle_transform, col);
            for (std::size_t r = 0; r < p.cocycle_rank; ++r)
                if (t[r] != 0) throw std::logic_error("coboundary is not a cocycle: delta^2 != 0?");
            for (std::size_t r = 0; r < p.kernel_dim; ++r)
                image_coords[r][j] = t[p.cocycle_rank + r];
        }
    }

    if (p.kernel_dim == 0) {
        p.free_rank = 0;
        p.quotient_transform = {};
        return p;
    }
    SmithDecomposition snf_m = smith_normal_form(image_coords);
    p.quotient_transform = snf_m.U;
    p.invariant_factors.assign(snf_m.diagonal.begin(),
                               snf_m.diagonal.begin() + static_cast<std::ptrdiff_t>(snf_m.rank));
    p.free_rank = p.kernel_dim - snf_m.rank;
    for (const Int& e : p.invariant_factors)
        if (e > 1) p.torsion.push_back(e);

    // representatives: columns of Uinv_M carried back through the kernel basis
    auto cocycle_from_kernel_coords = [&](const std::vector<Int>& x) {
        Cochain c(coeffs, degree);
        for (std::size_t r = 0; r < dim; ++r) {
            Int v = 0;
            for (std::size_t j = 0; j < p.kernel_dim; ++j)
                if (p.kernel_columns[r][j] != 0 && x[j] != 0) v += p.kernel_columns[r][j] * x[j];
            if (v != 0) c.set(p.basis[r], v);
        }
        return c;
    };
    for (std::size_t i = 0; i < p.kernel_dim; ++i) {
        std::vector<Int> x(p.kernel_dim);
        for (std::size_t r = 0; r < p.kernel_dim; ++r) x[r] = snf_m.Uinv[r][i];
        if (i < snf_m.rank) {
            if (p.invariant_factors[i] > 1)
                p.torsion_representatives.push_back(cocycle_from_kernel_coords(x));
        } else {
            p.free_representatives.push_back(cocycle_from_kernel_coords(x));
        }
    }
    return p;
}

// Coordinates of a cocycle in the presentation's free + torsion basis; zero
// exactly when the cocycle is a coboundary. Throws if c is not a cocycle.
inline ClassCoordinates class_coordinates(const Cochain& c, const CohomologyPresentation& p) {
    if (c.degree() != p.degree || !(c.coefficients() == p.coeffs))
        throw std::invalid_argument("cochain does not live in the presentation's complex");
    std::vector<Int> vec(p.basis.size(), 0);
    for (std::size_t r = 0; r < p.basis.size(); ++r) vec[r] = c.value(p.basis[r]);
    std::vector<Int> t = matrix_vector(p.cocycle_transform, vec);
    for (std::size_t r = 0; r < p.cocycle_rank; ++r)
        if (t[r] != 0) throw std::invalid_argument("not a cocycle");
    std::vector<Int> x(t.begin() + static_cast<std::ptrdiff_t>(p.cocycle_rank), t.end());
    std::vector<Int> y = matrix_vector(p.quotient_transform, x);
    ClassCoordinates out;
    for (std::size_t i = 0; i < p.invariant_factors.size(); ++i) {
        const Int& e = p.invariant_factors[i];
        if (e > 1) {
            Int red = y[i] % e;
            if (red < 0) red += e;
            out.torsion.push_back(red);
        }
    }
    for (std::size_t i = p.invariant_factors.size(); i < p.kernel_dim; ++i)
        out.free_part.push_back(y[i]);
    return out;
}

inline bool is_cocycle(const Cochain& c) { return coboundary(c).is_zero(); }

inline bool is_coboundary_class(const Cochain& c, const CohomologyPresentation& p) {
    return class_coordinates(c, p).is_zero();
}

// ---------------------------------------------------------------------------
// Named cocycles of the one- and two-factor complexes.
// ---------------------------------------------------------------------------

// sigma^* = sum_{a_i in S} alpha_i^* + sum_{b_i in S} beta_i^*
inline Cochain sigma_star(const SignSet& s) {
    CoefficientSystem coeffs({s.genus}, {s});
    Cochain c(coeffs, 1);
    for (const auto& [kind, idx] : s.members)
        c.add(TensorSymbol({kind == 'a' ? sym_alpha(idx) : sym_beta(idx)}), 1);
    return c;
}

// Pivot rule: Case A picks the smallest i0 with a_{i0} in S; otherwise Case B
// picks the smallest i0 with b_{i0} in S.
struct H1Pivot {
    bool case_a = true;
    int i0 = 0;
};

inline H1Pivot h1_pivot(const SignSet& s) {
    for (int i = 1; i <= s.genus; ++i)
        if (s.contains('a', i)) return {true, i};
    for (int i = 1; i <= s.genus; ++i)
        if (s.contains('b', i)) return {false, i};
    throw std::invalid_argument("pivot requires a nonempty sign set");
}

// The named degree-1 cocycles sigma^*_i, alphabar^*_i, betabar^*_i of the
// pivot tables, plus the resulting free basis.
struct H1NamedBasis {
    H1Pivot pivot;
    std::vector<Cochain> sigma_i;      // indexed 0..g-1
    std::vector<Cochain> alpha_bar_i;  // indexed 0..g-1
    std::vector<Cochain> beta_bar_i;   // indexed 0..g-1
    std::vector<Cochain> free_basis;   // 2g-2 cocycles per the corollaries
    Cochain torsion_class;             // sigma^*
};

inline H1NamedBasis h1_named_basis(const SignSet& s) {
    const int g = s.genus;
    CoefficientSystem coeffs({g}, {s});
    H1Pivot pivot = h1_pivot(s);
    auto in = [&](char kind, int i) { return s.contains(kind, i); };
    auto dual_alpha = [&](int i) { return Cochain::dual_basis(coeffs, TensorSymbol({sym_alpha(i)})); };
    auto dual_beta = [&](int i) { return Cochain::dual_basis(coeffs, TensorSymbol({sym_beta(i)})); };
    H1NamedBasis out{pivot, {}, {}, {}, {}, sigma_star(s)};
    const int i0 = pivot.i0;
    for (int i = 1; i <= g; ++i) {
        bool ina = in('a', i), inb = in('b', i);
        Cochain sig(coeffs, 1), abar(coeffs, 1), bbar(coeffs, 1);
        if (ina && inb) sig = dual_alpha(i) + dual_beta(i);
        else if (ina) sig = dual_alpha(i);
        else if (inb) sig = dual_beta(i);
        if (pivot.case_a) {
            if (!ina && inb) abar = dual_alpha(i) + dual_beta(i0);
            if (!ina && !inb) abar = dual_alpha(i);
            if (ina) bbar = dual_beta(i) - dual_beta(i0);
            if (!ina && !inb) bbar = dual_beta(i);
        } else {
            if (inb) abar = dual_alpha(i) - dual_alpha(i0);
            if (!ina && !inb) abar = dual_alpha(i);
            if (ina && !inb) bbar = dual_beta(i) + dual_alpha(i0);
            if (!ina && !inb) bbar = dual_beta(i);
        }
        out.sigma_i.push_back(sig);
        out.alpha_bar_i.push_back(abar);
        out.beta_bar_i.push_back(bbar);
    }
    for (int i = 1; i <= g; ++i) {
        bool ina = in('a', i), inb = in('b', i);
        bool in_s = ina || inb;
        if (in_s && i != i0) out.free_basis.push_back(out.sigma_i[static_cast<std::size_t>(i - 1)]);
    }
    for (int i = 1; i <= g; ++i) {
        bool ina = in('a', i), inb = in('b', i);
        if (pivot.case_a) {
            // alphabar over B u N
            if (!ina) out.free_basis.push_back(out.alpha_bar_i[static_cast<std::size_t>(i - 1)]);
        } else {
            // alphabar over Y u B u N - {i0}
            if ((inb || (!ina && !inb)) && i != i0)
                out.free_basis.push_back(out.alpha_bar_i[static_cast<std::size_t>(i - 1)]);
        }
    }
    for (int i = 1; i <= g; ++i) {
        bool ina = in('a', i), inb = in('b', i);
        if (pivot.case_a) {
            // betabar over Y u A u N - {i0}
            if ((ina || (!ina && !inb)) && i != i0)
                out.free_basis.push_back(out.beta_bar_i[static_cast<std::size_t>(i - 1)]);
        } else {
            // betabar over A u N
            if (!inb) out.free_basis.push_back(out.beta_bar_i[static_cast<std::size_t>(i - 1)]);
        }
    }
    return out;
}

// nu = sum_{l_i in S_1} (lambda_i (x) chi)^* + sum_{m_j in S_2} (chi (x) mu_j)^*
inline Cochain nu_cocycle(const CoefficientSystem& coeffs) {
    if (coeffs.genera.size() != 2) throw std::invalid_argument("nu lives over two factors");
    if (coeffs.sets[0].empty() || coeffs.sets[1].empty())
        throw std::invalid_argument("nu requires both sign sets nonempty");
    Cochain c(coeffs, 1);
    for (const auto& [kind, idx] : coeffs.sets[0].members)
        c.add(TensorSymbol({kind == 'a' ? sym_alpha(idx) : sym_beta(idx), sym_chi()}), 1);
    for (const auto& [kind, idx] : coeffs.sets[1].members)
        c.add(TensorSymbol({sym_chi(), kind == 'a' ? sym_alpha(idx) : sym_beta(idx)}), 1);
    return c;
}

namespace detail {

inline int epsilon_of(char kind) { return kind == 'a' ? 1 : -1; }  // eps_alpha = 1, eps_beta = -1
inline char hat_of(char kind) { return kind == 'a' ? 'b' : 'a'; }  // a_k^ = b_k, b_k^ = a_k
inline BasisSymbol greek_of(char kind, int idx) {
    return kind == 'a' ? sym_alpha(idx) : sym_beta(idx);
}

}  // namespace detail

// lambda'_i = sum_{m_j in S_2} (lambda_i (x) mu_j)^* + eps_{lambda_i} [hat(l_i) in S_1] (omega (x) chi)^*
inline Cochain lambda_prime(char kind, int index, const CoefficientSystem& coeffs) {
    if (coeffs.genera.size() != 2) throw std::invalid_argument("lambda' lives over two factors");
    Cochain c(coeffs, 2);
    BasisSymbol lam = detail::greek_of(kind, index);
    for (const auto& [mk, mj] : coeffs.sets[1].members)
        c.add(TensorSymbol({lam, detail::greek_of(mk, mj)}), 1);
    if (coeffs.sets[0].contains(detail::hat_of(kind), index))
        c.add(TensorSymbol({sym_omega(), sym_chi()}), detail::epsilon_of(kind));
    return c;
}

// mu''_j = sum_{l_i in S_1} (lambda_i (x) mu_j)^* - eps_{mu_j} [hat(m_j) in S_2] (chi (x) omega)^*
inline Cochain mu_double_prime(char kind, int index, const CoefficientSystem& coeffs) {
    if (coeffs.genera.size() != 2) throw std::invalid_argument("mu'' lives over two factors");
    Cochain c(coeffs, 2);
    BasisSymbol mu = detail::greek_of(kind, index);
    for (const auto& [lk, li] : coeffs.sets[0].members)
        c.add(TensorSymbol({detail::greek_of(lk, li), mu}), 1);
    if (coeffs.sets[1].contains(detail::hat_of(kind), index))
        c.add(TensorSymbol({sym_chi(), sym_omega()}), -detail::epsilon_of(kind));
    return c;
}

// Generators l_0 / m_0 with hatted partner in S: the smallest index wins,
// scanning a_i before b_i.
inline std::pair<char, int> h3_pivot(const SignSet& s) {
    for (int i = 1; i <= s.genus; ++i) {
        if (s.contains(detail::hat_of('a'), i)) return {'a', i};
        if (s.contains(detail::hat_of('b'), i)) return {'b', i};
    }
    throw std::invalid_argument("h3 pivot requires a nonempty sign set");
}

// lambdabar'_i = eps_{lambda_i} (lambda_i (x) omega)^* - [hat(l_i) in S_1] eps_{mu_0} (omega (x) mu_0)^*
inline Cochain lambda_bar_prime(char kind, int index, const CoefficientSystem& coeffs) {
    if (coeffs.genera.size() != 2) throw std::invalid_argument("lambdabar' lives over two factors");
    Cochain c(coeffs, 3);
    c.add(TensorSymbol({detail::greek_of(kind, index), sym_omega()}), detail::epsilon_of(kind));
    if (coeffs.sets[0].contains(detail::hat_of(kind), index)) {
        auto [mk, mj] = h3_pivot(coeffs.sets[1]);
        c.add(TensorSymbol({sym_omega(), detail::greek_of(mk, mj)}), -detail::epsilon_of(mk));
    }
    return c;
}

// mubar''_j = [hat(m_j) in S_2] eps_{lambda_0} (lambda_0 (x) omega)^* - eps_{mu_j} (omega (x) mu_j)^*
inline Cochain mu_bar_double_prime(char kind, int index, const CoefficientSystem& coeffs) {
    if (coeffs.genera.size() != 2) throw std::invalid_argument("mubar'' lives over two factors");
    Cochain c(coeffs, 3);
    if (coeffs.sets[1].contains(detail::hat_of(kind), index)) {
        auto [lk, li] = h3_pivot(coeffs.sets[0]);
        c.add(TensorSymbol({detail::greek_of(lk, li), sym_omega()}), detail::epsilon_of(lk));
    }
    c.add(TensorSymbol({sym_omega(), detail::greek_of(kind, index)}), -detail::epsilon_of(kind));
    return c;
}

// tau = (omega (x) omega)^*
inline Cochain tau_cocycle(const CoefficientSystem& coeffs) {
    if (coeffs.genera.size() != 2) throw std::invalid_argument("tau lives over two factors");
    return Cochain::dual_basis(coeffs, TensorSymbol({sym_omega(), sym_omega()}));
}

// ---------------------------------------------------------------------------
// Cup products.
// ---------------------------------------------------------------------------

namespace detail {

// delta(lambda_r, mu_s) tables of the cochain-level cup-product lemma.
inline Int cup_delta(const BasisSymbol& x, const BasisSymbol& y, const SignSet& s1,
                     const SignSet& s2) {
    const int g = s1.genus;
    const int r = x.index, s = y.index;
    const bool xa = x.kind == SymbolKind::Alpha, ya = y.kind == SymbolKind::Alpha;
    Int total = 0;
    if (xa && ya) {
        if (r < s && s1.contains('b', r)) total += -2;
        if (r <= s && s < g && s1.contains('b', r)) total += s2.contains('b', s) ? 2 : -2;
    } else if (xa && !ya) {
        if (r < s && s1.contains('b', r)) total += s2.contains('a', s) ? -2 : 2;
        if (r <= s && s < g && s1.contains('b', r)) total += 2;
        if (r == s) total += s2.contains('a', r) ? 1 : -1;
    } else if (!xa && ya) {
        if (r < s && s1.contains('a', r)) total += 2;
        if (r <= s && s < g && s1.contains('a', r)) total += s2.contains('b', s) ? -2 : 2;
        if (r == s) total -= s2.contains('b', r) ? 1 : -1;
    } else {
        if (r < s && s1.contains('a', r)) total += s2.contains('a', s) ? 2 : -2;
        if (r <= s && s < g && s1.contains('a', r)) total += -2;
    }
    return total;
}

// Products of one-factor basis cochains x^* . y^*, as (symbol, coefficient) pairs.
inline std::vector<std::pair<BasisSymbol, Int>> cup_single_basis(const BasisSymbol& x,
                                                                 const BasisSymbol& y,
                                                                 const SignSet& s1,
                                                                 const SignSet& s2) {
    const int g = s1.genus;
    if (x.degree() + y.degree() > 2) return {};
    if (x.kind == SymbolKind::Chi) return {{y, 1}};  // chi^* . Theta^* = Theta^*
    if (y.kind == SymbolKind::Chi) {
        if (x.degree() == 1) {
            char l = x.kind == SymbolKind::Alpha ? 'a' : 'b';
            return {{x, s2.contains(l, x.index) ? -1 : 1}};
        }
        // omega^* . chi^*
        bool both_or_none = s2.contains('a', g) == s2.contains('b', g);
        return {{x, both_or_none ? 1 : -1}};
    }
    Int d = cup_delta(x, y, s1, s2);
    if (d == 0) return {};
    return {{sym_omega(), d}};
}

}  // namespace detail

// One-factor cochain product from the closed-form tables.
inline Cochain cup_closed_form(const Cochain& u, const Cochain& v) {
    if (u.genera().size() != 1 || v.genera().size() != 1 || u.genera() != v.genera())
        throw std::invalid_argument("cup_closed_form expects one-factor cochains over one group");
    CoefficientSystem target = symmetric_difference(u.coefficients(), v.coefficients());
    Cochain r(target, u.degree() + v.degree());
    const SignSet& s1 = u.coefficients().sets[0];
    const SignSet& s2 = v.coefficients().sets[0];
    for (const auto& [sx, cx] : u.values())
        for (const auto& [sy, cy] : v.values())
            for (const auto& [sym, d] :
                 detail::cup_single_basis(sx.factors[0], sy.factors[0], s1, s2))
                r.add(TensorSymbol({sym}), cx * cy * d);
    return r;
}

// Cochain product by direct dualization of a diagonal approximation:
// (u . v)(x) = (-1)^{pq} (u (x) v)(Delta x). The closed-form tables and the
// two-factor diagram route are checked against this independently.
template <typename DiagonalFn>
inline Cochain cup_via_diagonal(const Cochain& u, const Cochain& v, DiagonalFn&& diagonal) {
    if (u.genera() != v.genera()) throw std::invalid_argument("cup over different groups");
    const std::size_t n = u.genera().size();
    CoefficientSystem target = symmetric_difference(u.coefficients(), v.coefficients());
    Cochain r(target, u.degree() + v.degree());
    const int pq_sign = (u.degree() * v.degree()) % 2 == 0 ? 1 : -1;
    for (const TensorSymbol& x : basis_of(u.genera(), u.degree() + v.degree())) {
        ChainElement dx = diagonal(ChainElement::basis(u.genera(), x));
        Int total = 0;
        for (const auto& [key, c] : dx.terms()) {
            int left_degree = 0;
            for (std::size_t i = 0; i < n; ++i) left_degree += key.symbol.factors[i].degree();
            if (left_degree != u.degree()) continue;
            TensorSymbol left(std::vector<BasisSymbol>(key.symbol.factors.begin(),
                                                       key.symbol.factors.begin() +
                                                           static_cast<std::ptrdiff_t>(n)));
            TensorSymbol right(std::vector<BasisSymbol>(
                key.symbol.factors.begin() + static_cast<std::ptrdiff_t>(n),
                key.symbol.factors.end()));
            Int uv = u.value(left);
            if (uv == 0) continue;
            Int vv = v.value(right);
            if (vv == 0) continue;
            int sign = 1;
            for (std::size_t i = 0; i < n; ++i)
                sign *= word_sign(key.words[i], u.coefficients().sets[i]);
            for (std::size_t i = 0; i < n; ++i)
                sign *= word_sign(key.words[n + i], v.coefficients().sets[i]);
            total += c * sign * uv * vv;
        }
        if (total != 0) r.set(x, pq_sign * total);
    }
    return r;
}

// Two-factor cochain product through the comparison diagram: decompose along
// t, shuffle with the (-1)^{|mu||lambda'|} sign, multiply factorwise with the
// closed-form tables, reassemble through t.
inline Cochain cup_two_factor(const Cochain& u, const Cochain& v) {
    if (u.genera().size() != 2 || u.genera() != v.genera())
        throw std::invalid_argument("cup_two_factor expects two-factor cochains over one group");
    CoefficientSystem target = symmetric_difference(u.coefficients(), v.coefficients());
    Cochain r(target, u.degree() + v.degree());
    const SignSet& s1 = u.coefficients().sets[0];
    const SignSet& s2 = u.coefficients().sets[1];
    const SignSet& s1p = v.coefficients().sets[0];
    const SignSet& s2p = v.coefficients().sets[1];
    for (const auto& [sx, cx] : u.values()) {
        for (const auto& [sy, cy] : v.values()) {
            const BasisSymbol &lam = sx.factors[0], &mu = sx.factors[1];
            const BasisSymbol &lamp = sy.factors[0], &mup = sy.factors[1];
            int t_sign = (mu.degree() * lamp.degree()) % 2 == 0 ? 1 : -1;
            auto left = detail::cup_single_basis(lam, lamp, s1, s1p);
            if (left.empty()) continue;
            auto right = detail::cup_single_basis(mu, mup, s2, s2p);
            for (const auto& [lsym, lc] : left)
                for (const auto& [rsym, rc] : right)
                    r.add(TensorSymbol({lsym, rsym}), cx * cy * t_sign * lc * rc);
        }
    }
    return r;
}

// Degree-based dispatch used by the searches: tables for one factor, the
// diagram route for two.
inline Cochain cup(const Cochain& u, const Cochain& v) {
    if (u.genera().size() == 1) return cup_closed_form(u, v);
    return cup_two_factor(u, v);
}

}  // namespace surfcoh

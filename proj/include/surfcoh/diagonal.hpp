#pragma once

#include <stdexcept>
#include <vector>

#include "surfcoh/homotopy.hpp"
#include "surfcoh/resolution.hpp"

namespace surfcoh {

namespace detail {

inline std::vector<int> doubled_genera(const std::vector<int>& genera) {
    std::vector<int> d = genera;
    d.insert(d.end(), genera.begin(), genera.end());
    return d;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Closed-form diagonal approximation for one factor.
// ---------------------------------------------------------------------------

// Delta(chi) = chi (x) chi, Delta(alpha_i) = alpha_i (x) a_i chi + chi (x) alpha_i,
// Delta(beta_i) = beta_i (x) b_i chi + chi (x) beta_i, and the displayed Delta(omega).
inline ChainElement diagonal_closed_form(const BasisSymbol& b, int genus) {
    ChainElement r({genus, genus}, b.degree());
    auto term = [&](const Word& w1, const BasisSymbol& s1, const Word& w2, const BasisSymbol& s2,
                    const Int& c) { r.add_term({w1, w2}, TensorSymbol({s1, s2}), c); };
    const Word one = Word::identity(genus);
    switch (b.kind) {
        case SymbolKind::Chi:
            term(one, sym_chi(), one, sym_chi(), 1);
            return r;
        case SymbolKind::Alpha:
            term(one, sym_alpha(b.index), single_letter_word(genus, gen_a(b.index)), sym_chi(), 1);
            term(one, sym_chi(), one, sym_alpha(b.index), 1);
            return r;
        case SymbolKind::Beta:
            term(one, sym_beta(b.index), single_letter_word(genus, gen_b(b.index)), sym_chi(), 1);
            term(one, sym_chi(), one, sym_beta(b.index), 1);
            return r;
        case SymbolKind::Omega: {
            // sum_{i=1}^{g-1} [ sum_{j<=i} P_{j-1}((1 - c_j b_j) alpha_j + (a_j - c_j) beta_j) ]
            //                 (x) P_i(alpha_{i+1} - b_i alpha_i + a_{i+1} beta_{i+1} - beta_i)
            for (int i = 1; i <= genus - 1; ++i) {
                ChainElement left({genus}, 1);
                for (int j = 1; j <= i; ++j) {
                    const Word p = p_word(j - 1, genus);
                    const Word cj = commutator_c(j, genus);
                    left.add_term({p}, TensorSymbol({sym_alpha(j)}), 1);
                    left.add_term({concat(p, concat(cj, single_letter_word(genus, gen_b(j))))},
                                  TensorSymbol({sym_alpha(j)}), -1);
                    left.add_term({concat(p, single_letter_word(genus, gen_a(j)))},
                                  TensorSymbol({sym_beta(j)}), 1);
                    left.add_term({concat(p, cj)}, TensorSymbol({sym_beta(j)}), -1);
                }
                ChainElement right({genus}, 1);
                const Word pi = p_word(i, genus);
                right.add_term({pi}, TensorSymbol({sym_alpha(i + 1)}), 1);
                right.add_term({concat(pi, single_letter_word(genus, gen_b(i)))},
                               TensorSymbol({sym_alpha(i)}), -1);
                right.add_term({concat(pi, single_letter_word(genus, gen_a(i + 1)))},
                               TensorSymbol({sym_beta(i + 1)}), 1);
                right.add_term({pi}, TensorSymbol({sym_beta(i)}), -1);
                r += tensor_product(left, right);
            }
            // sum_{i=1}^{g} ( P_{i-1} alpha_i (x) P_{i-1} a_i beta_i - P_i beta_i (x) P_i b_i alpha_i )
            for (int i = 1; i <= genus; ++i) {
                const Word pim1 = p_word(i - 1, genus);
                const Word pi = p_word(i, genus);
                term(pim1, sym_alpha(i), concat(pim1, single_letter_word(genus, gen_a(i))),
                     sym_beta(i), 1);
                term(pi, sym_beta(i), concat(pi, single_letter_word(genus, gen_b(i))), sym_alpha(i),
                     -1);
            }
            // + chi (x) omega + omega (x) b_g a_g chi
            term(one, sym_chi(), one, sym_omega(), 1);
            term(one, sym_omega(),
                 concat(single_letter_word(genus, gen_b(genus)),
                        single_letter_word(genus, gen_a(genus))),
                 sym_chi(), 1);
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Generic inductive lift from the contracting homotopy:
// Delta_0(b_0) = b_0 (x) b_0 and Delta_q(b_q) = w_{q-1} . Delta_{q-1} . d_q (b_q).
// Works for any factor count; this is the independent oracle for the closed form.
// ---------------------------------------------------------------------------

inline ChainElement diagonal_generic(const ChainElement& x);

inline ChainElement diagonal_generic_basis(const std::vector<int>& genera, const TensorSymbol& b) {
    const std::vector<int> dbl = detail::doubled_genera(genera);
    if (b.degree() == 0) {
        std::vector<BasisSymbol> syms = b.factors;
        syms.insert(syms.end(), b.factors.begin(), b.factors.end());
        return ChainElement::basis(dbl, TensorSymbol(std::move(syms)));
    }
    ChainElement below = diagonal_generic(tensor_differential(ChainElement::basis(genera, b)));
    return homotopy_w(below, genera.size());
}

// Equivariant-linear extension: Delta(y . x) = (y, y) . Delta(x).
inline ChainElement diagonal_generic(const ChainElement& x) {
    const std::vector<int> dbl = detail::doubled_genera(x.genera());
    ChainElement r(dbl, x.degree());
    for (const auto& [k, c] : x.terms()) {
        ChainElement d = diagonal_generic_basis(x.genera(), k.symbol);
        std::vector<Word> tuple = k.words;
        tuple.insert(tuple.end(), k.words.begin(), k.words.end());
        d = d.acted_by(tuple);
        d.scale(c);
        r += d;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Shuffled two-factor diagonal: (1 (x) T (x) 1) . (Delta^{g_1} (x) Delta^{g_2}),
// T(x (x) y) = (-1)^{|x||y|} y (x) x. The first map carries no sign (both
// tensor factors have degree zero).
// ---------------------------------------------------------------------------

inline ChainElement shuffle_diagonal(const TensorSymbol& b, const std::vector<int>& genera) {
    if (genera.size() != 2 || b.factors.size() != 2)
        throw std::invalid_argument("shuffle_diagonal expects exactly two factors");
    const ChainElement d1 = diagonal_closed_form(b.factors[0], genera[0]);
    const ChainElement d2 = diagonal_closed_form(b.factors[1], genera[1]);
    ChainElement r({genera[0], genera[1], genera[0], genera[1]}, b.degree());
    for (const auto& [k1, c1] : d1.terms()) {
        for (const auto& [k2, c2] : d2.terms()) {
            int sign = (k1.symbol.factors[1].degree() * k2.symbol.factors[0].degree()) % 2 == 1
                           ? -1
                           : 1;
            r.add_term({k1.words[0], k2.words[0], k1.words[1], k2.words[1]},
                       TensorSymbol({k1.symbol.factors[0], k2.symbol.factors[0],
                                     k1.symbol.factors[1], k2.symbol.factors[1]}),
                       c1 * c2 * sign);
        }
    }
    return r;
}

// Equivariant-linear extension of the shuffled diagonal.
inline ChainElement shuffle_diagonal(const ChainElement& x) {
    if (x.genera().size() != 2)
        throw std::invalid_argument("shuffle_diagonal expects exactly two factors");
    const std::vector<int> dbl = detail::doubled_genera(x.genera());
    ChainElement r(dbl, x.degree());
    for (const auto& [k, c] : x.terms()) {
        ChainElement d = shuffle_diagonal(k.symbol, x.genera());
        d = d.acted_by({k.words[0], k.words[1], k.words[0], k.words[1]});
        d.scale(c);
        r += d;
    }
    return r;
}

// Single-factor diagonal on arbitrary elements via the closed form.
inline ChainElement diagonal_single(const ChainElement& x) {
    if (x.genera().size() != 1)
        throw std::invalid_argument("diagonal_single expects one factor");
    const int g = x.genera()[0];
    ChainElement r({g, g}, x.degree());
    for (const auto& [k, c] : x.terms()) {
        ChainElement d = diagonal_closed_form(k.symbol.factors[0], g);
        d = d.acted_by({k.words[0], k.words[0]});
        d.scale(c);
        r += d;
    }
    return r;
}

// Dispatch used by cochain-level dualization: the closed form for one factor,
// the shuffled diagonal for two.
inline ChainElement diagonal_for(const ChainElement& x) {
    if (x.genera().size() == 1) return diagonal_single(x);
    if (x.genera().size() == 2) return shuffle_diagonal(x);
    throw std::invalid_argument("diagonal approximations implemented for one or two factors");
}

}  // namespace surfcoh

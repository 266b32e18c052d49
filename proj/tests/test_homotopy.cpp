#include <catch2/catch_amalgamated.hpp>

#include "surfcoh/homotopy.hpp"
#include "surfcoh/sampling.hpp"

using namespace surfcoh;

namespace {
Word W(const std::string& s, int g) { return parse_word(s, g); }

ChainElement ring_times(const GroupRingElement& x, const ChainElement& e) {
    ChainElement r(e.genera(), e.degree());
    for (const auto& [w, c] : x.terms()) {
        ChainElement acted = e.acted_by({w});
        acted.scale(c);
        r += acted;
    }
    return r;
}

Word power(const Word& w, int m) {
    Word r = Word::identity(w.genus);
    for (int i = 0; i < m; ++i) r = concat(r, w);
    return r;
}
}  // namespace

TEST_CASE("s_minus1", "[homotopy]") {
    ChainElement chi = chain_term(2, W("1", 2), sym_chi());
    CHECK(s_minus1(1, 2) == chi);
    CHECK(s_minus1(1, 2).augmentation() == 1);
    ChainElement five = chi;
    five.scale(5);
    CHECK(s_minus1(5, 2) == five);
}

TEST_CASE("s0 on letters and words", "[homotopy]") {
    // s_0(A_1 chi) = -A_1 alpha_1
    CHECK(s0_word(W("A1", 2), 2) == chain_term(2, W("A1", 2), sym_alpha(1), -1));
    // s_0(chi) = 0
    CHECK(s0_word(W("1", 2), 2).is_zero());
    // s_0(b_2 A_2 chi) = beta_2 - b_2 A_2 alpha_2   (g = 2, m = 1)
    ChainElement expect({2}, 1);
    expect.add_term({W("1", 2)}, TensorSymbol({sym_beta(2)}), 1);
    expect.add_term({W("b2A2", 2)}, TensorSymbol({sym_alpha(2)}), -1);
    CHECK(s0_word(W("b2A2", 2), 2) == expect);
}

TEST_CASE("s0 closed relations", "[homotopy]") {
    for (int g : {2, 3}) {
        const Word ag = single_letter_word(g, gen_a(g));
        const Word agbar = inverse_word(ag);
        const Word bg = single_letter_word(g, gen_b(g));
        const Word u = special_word(SpecialWordKind::U, 0, g);
        const Word ubar = normal_form(inverse_word(u));

        for (int m = 1; m <= 4; ++m) {
            // s_0(A_g^m chi) = -(A_g + ... + A_g^m) alpha_g
            ChainElement lhs = s0_word(power(agbar, m), g);
            ChainElement rhs({g}, 1);
            for (int i = 1; i <= m; ++i)
                rhs.add_term({power(agbar, i)}, TensorSymbol({sym_alpha(g)}), -1);
            CHECK(lhs == rhs);

            // s_0(b_g A_g^m chi) = beta_g - b_g(A_g + ... + A_g^m) alpha_g
            ChainElement lhs2 = s0_word(concat(bg, power(agbar, m)), g);
            ChainElement rhs2({g}, 1);
            rhs2.add_term({Word::identity(g)}, TensorSymbol({sym_beta(g)}), 1);
            for (int i = 1; i <= m; ++i)
                rhs2.add_term({concat(bg, power(agbar, i))}, TensorSymbol({sym_alpha(g)}), -1);
            CHECK(lhs2 == rhs2);

            // s_0(U^{m+1} chi) = (1 + U + ... + U^m) s_0(U chi)
            GroupRingElement geom = GroupRingElement::zero(g);
            for (int i = 0; i <= m; ++i) geom.add_term(normal_form(power(u, i)), 1);
            CHECK(s0_word(power(u, m + 1), g) == ring_times(geom, s0_word(u, g)));
        }

        // s_0(Ubar chi) = d_2(omega) + b_g alpha_g + (1 - Ubar) beta_g
        ChainElement rhs3 = d2_closed_form(g);
        rhs3.add_term({bg}, TensorSymbol({sym_alpha(g)}), 1);
        rhs3.add_term({Word::identity(g)}, TensorSymbol({sym_beta(g)}), 1);
        rhs3.add_term({ubar}, TensorSymbol({sym_beta(g)}), -1);
        CHECK(s0_word(ubar, g) == rhs3);

        // s_0(Ubar chi) = -Ubar s_0(U chi)
        ChainElement neg = s0_word(u, g).acted_by({ubar});
        neg.scale(-1);
        CHECK(s0_word(ubar, g) == neg);

        // s_0(a_g U chi) = alpha_g + a_g s_0(U chi)
        ChainElement rhs4 = s0_word(u, g).acted_by({ag});
        rhs4.add_term({Word::identity(g)}, TensorSymbol({sym_alpha(g)}), 1);
        CHECK(s0_word(normal_form(concat(ag, u)), g) == rhs4);
    }
}

TEST_CASE("s1 on basis elements", "[homotopy]") {
    // s_1(y lambda) = 0 for lambda != beta_g
    CHECK(s1_term(W("a2b1", 2), sym_alpha(1), 2).is_zero());
    CHECK(s1_term(W("a2b1", 2), sym_alpha(2), 2).is_zero());
    CHECK(s1_term(W("b1A2", 2), sym_beta(1), 2).is_zero());
    // empty word is the Neither case
    CHECK(s1_term(W("1", 2), sym_beta(2), 2).is_zero());
    // s_1(a_2 beta_2) = (b1 a1 B1 A1) omega at genus 2
    CHECK(s1_term(W("a2", 2), sym_beta(2), 2) ==
          chain_term(2, W("b1a1B1A1", 2), sym_omega()));
}

TEST_CASE("contracting identities hold on random and adversarial elements", "[homotopy]") {
    for (int g : {2, 3}) {
        HomotopyReport rep = verify_contracting(g, 120, 18, 2026);
        for (const auto& id : rep.identities) {
            INFO("genus " << g << ": " << id.name << " (" << id.samples << " samples)");
            CHECK(id.violations == 0);
        }
        CHECK(rep.all_zero());
    }
}

TEST_CASE("tensor homotopy u", "[homotopy]") {
    // u(a_1 chi (x) b_1 chi) = alpha_1 (x) b_1 chi + chi (x) beta_1
    ChainElement x({2, 2}, 0);
    x.add_term({W("a1", 2), W("b1", 2)}, TensorSymbol({sym_chi(), sym_chi()}), 1);
    ChainElement expect({2, 2}, 1);
    expect.add_term({W("1", 2), W("b1", 2)}, TensorSymbol({sym_alpha(1), sym_chi()}), 1);
    expect.add_term({W("1", 2), W("1", 2)}, TensorSymbol({sym_chi(), sym_beta(1)}), 1);
    CHECK(homotopy_u(x) == expect);

    // u(chi (x) chi) = 0
    CHECK(homotopy_u(homotopy_unit({2, 2})).is_zero());

    // u_{-1}(1) = chi (x) chi
    CHECK(homotopy_unit({2, 2}) ==
          ChainElement::basis({2, 2}, TensorSymbol({sym_chi(), sym_chi()})));
}

TEST_CASE("tensor homotopy w", "[homotopy]") {
    // single factor, doubled complex: w(chi (x) a_1 chi) = chi (x) alpha_1
    ChainElement z({2, 2}, 0);
    z.add_term({W("1", 2), W("a1", 2)}, TensorSymbol({sym_chi(), sym_chi()}), 1);
    ChainElement expect({2, 2}, 1);
    expect.add_term({W("1", 2), W("1", 2)}, TensorSymbol({sym_chi(), sym_alpha(1)}), 1);
    CHECK(homotopy_w(z, 1) == expect);

    // z_1 of positive degree: only u(z_1) (x) z_2 survives
    ChainElement z2({2, 2}, 1);
    z2.add_term({W("a2", 2), W("b1", 2)}, TensorSymbol({sym_beta(2), sym_chi()}), 1);
    ChainElement first = homotopy_u(ChainElement::basis({2}, TensorSymbol({sym_beta(2)}))
                                         .acted_by({W("a2", 2)}));
    ChainElement expect2({2, 2}, 2);
    for (const auto& [k, c] : first.terms())
        expect2.add_term({k.words[0], W("b1", 2)}, TensorSymbol({k.symbol.factors[0], sym_chi()}), c);
    CHECK(homotopy_w(z2, 1) == expect2);

    // w_{-1}(1) = (chi) (x) (chi) for one factor
    CHECK(homotopy_unit({2, 2}).degree() == 0);
}

TEST_CASE("tensor homotopies are contracting", "[homotopy]") {
    for (const std::vector<int>& genera : {std::vector<int>{2}, {2, 2}, {2, 3}}) {
        TensorHomotopyReport rep = verify_tensor_homotopy(genera, 6, 8, 99);
        INFO("u over " << genera.size() << " factors");
        CHECK(rep.u_identity.violations == 0);
        CHECK(rep.w_identity.violations == 0);
    }
}

// A short tour of the library on the A2 singularity x^3.

#include <iostream>

#include "thimble/thimble.hpp"

int main()
{
    using namespace thimble;

    // Distinguished basis of two thimbles with <d1, d2> = -1, fibre parity 1.
    const ThimbleLattice a2(1, IntMatrix{{2, -1}, {-1, 2}});
    std::cout << "Var^{-1}:  " << var_inverse(a2) << '\n';
    const IntMatrix h = monodromy(a2);
    std::cout << "monodromy: " << h << ", cube is identity: " << std::boolalpha << (h * h * h).is_identity()
              << '\n';

    // Change the distinguished basis and check that Var^{-1} is the same operator.
    const BraidWord word = parse_braid_word("a1 f2");
    const Rebased moved = apply_braid_word(a2, word);
    std::cout << "after \"" << to_string(word) << "\": gram " << moved.lattice.gram() << ", basis change "
              << moved.basis_change << '\n';
    std::cout << "Var^{-1} congruent: " << !check_var_inverse_after_braid(a2, word).has_value() << '\n';

    // Real morsification x^3 - eps x: a minimum and a maximum.
    const std::vector<UpperEntry> upper{{0, 1, -1}};
    LevelData level{0, a2, build_sigma(MorseSpec({CriticalPoint::real(0), CriticalPoint::real(1)}), 1, upper),
                    std::nullopt, std::nullopt};
    std::cout << "Var^{-1} sigma_s: " << var_sigma_form(a2, level.conj) << '\n';

    IcisInstance inst;
    inst.n = 1;
    inst.p = 0;
    inst.signs = SignVector({1});
    inst.levels.push_back(level);
    std::cout << "index of grad x^3 at 0: " << index_eq2(inst) << '\n';

    InstanceDocument doc;
    doc.instance = inst;
    std::cout << "\nas an instance file:\n" << serialize_instance(doc);
}

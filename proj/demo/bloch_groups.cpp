// Prints the scissors-congruence groups of a few small rings.

#include "rbw/scissors.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> specs(argv + 1, argv + argc);
    if (specs.empty()) specs = {"gf(2,2)", "gf(2,3)", "z/9", "gf(2,1)[t]/t^3"};
    for (const auto& spec : specs) {
        auto R = rbw::Ring::build(spec);
        auto r = rbw::Scissors(R).bloch_groups();
        std::cout << r.ring << "\n"
                  << "  P  = " << r.P.describe() << "\n"
                  << "  RP = " << r.RP.describe() << "\n"
                  << "  B  = " << r.B.group.describe() << "\n"
                  << "  RB = " << r.RB.group.describe() << (r.rb_two_ways_agree ? "" : "  (paths disagree)") << "\n";
    }
}

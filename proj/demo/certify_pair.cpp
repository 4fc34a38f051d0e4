// Certifies d1_22(a|b) over GF(8) and prints the verdict and its stages.

#include "rbw/certify.hpp"

#include <iostream>

int main() {
    auto R = rbw::Ring::build("gf(2,3)");
    rbw::Certifier cf(R);
    const rbw::Elem a = 2, b = 3;
    auto c = cf.d1_22_certificate(a, b);
    std::cout << "d1_22(" << R->format(a) << " | " << R->format(b) << ")\n"
              << "  computed  " << cf.calculus().format(c.computed) << "\n"
              << "  expected  " << cf.calculus().format(c.expected) << "\n";
    for (const auto& s : c.stages) std::cout << "  " << (s.ok ? "ok   " : "miss ") << s.name << "  " << s.detail << "\n";
    std::cout << "  verdict   " << rbw::to_string(c.verdict) << "\n";
    return c.passed() ? 0 : 1;
}

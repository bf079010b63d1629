// Walks through three matings and prints what the library finds.

#include <iostream>

#include "lamlab/lamlab.hpp"

using namespace lamlab;

static void describe(const char* p, const char* q) {
    MatingSpec spec(Angle::parse(p), Angle::parse(q));
    std::cout << "== " << p << " and " << q << "\n";
    std::cout << "minor of p: " << spec.lp().minor() << ", major " << spec.lp().major() << "\n";
    std::cout << "minor of q: " << spec.lq().minor() << ", major " << spec.lq().major() << "\n";
    for (const auto& poly : polygons_of(spec.lq(), 12)) {
        std::cout << "q polygon:";
        for (const auto& v : poly.vertices) std::cout << " " << v;
        std::cout << "\n";
    }
    auto rep = check_theorem_3_5(spec, 12);
    std::cout << "mateable: " << (rep.mateable ? "yes" : "no") << ", clean: " << (rep.thm35_ok ? "yes" : "no") << "\n";
    for (const auto& f : rep.reasons) std::cout << "  " << code_name(f.code) << ": " << f.message << "\n";
    std::cout << "\n";
}

int main() {
    describe("3/7", "3/31");
    describe("7/15", "5/31");
    describe("15/31", "1/9");

    std::cout << "components of period dividing m:";
    for (int m = 1; m <= 10; ++m) std::cout << " " << mandelbrot_component_count(m);
    std::cout << "\n";
}

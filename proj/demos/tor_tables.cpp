// Derived-tensor tables.
//
// Three small experiments: the classical Tor_1(Z/a, Z/b) = Z/gcd(a,b) table,
// the 2-periodicity of Tor over Z/4 (resolutions never terminate there), and
// the six-term sequence obtained by deriving (x) Z/2 against the doubling
// extension 0 -> Z -> Z -> Z/2 -> 0.

#include <homkit/homkit.hpp>

#include <iomanip>
#include <iostream>

using namespace homkit;

int main() {
    const Ring Z = Ring::integers();

    std::cout << "Tor_1(Z/a, Z/b) for 2 <= a, b <= 12\n\n    ";
    for (long b = 2; b <= 12; ++b) std::cout << std::setw(5) << ("Z/" + std::to_string(b));
    std::cout << "\n";
    for (long a = 2; a <= 12; ++a) {
        std::cout << std::setw(4) << ("Z/" + std::to_string(a));
        for (long b = 2; b <= 12; ++b) {
            FpModule t = tor(FpModule::cyclic(Z, a), FpModule::cyclic(Z, b), 1);
            std::cout << std::setw(5) << t.decomposition().to_string();
        }
        std::cout << "\n";
    }

    std::cout << "\nTor_i(Z/2, Z/2) over Z/4 (2-periodic, never resolves away):\n  ";
    const Ring z4 = Ring::mod(4);
    FpModule two = FpModule::cyclic(z4, 2);
    for (int i = 0; i <= 8; ++i)
        std::cout << "i=" << i << ": " << tor(two, two, i).decomposition().to_string() << "  ";
    std::cout << "\n";

    // Deriving (x) Z/2 against 0 -> Z --x2--> Z -> Z/2 -> 0.  Tensoring is
    // only right exact; the Tor_1 terms measure what the x2 squashes.
    FpModule f1 = FpModule::free_module(Z, 1);
    FpModule z2 = FpModule::cyclic(Z, 2);
    ShortExactSeqModules doubling(f1, f1, z2, ModuleHom(f1, f1, Matrix::from_rows(Z, {{2}})),
                                  ModuleHom(f1, z2, Matrix::from_rows(Z, {{1}})));
    LongExactSequence les = tor_les(doubling, z2, 1);
    std::cout << "\nderived sequence of the doubling extension against Z/2 ("
              << (les.exact ? "exact" : "NOT exact") << "):\n";
    for (size_t i = 0; i < les.modules.size(); ++i)
        std::cout << "  " << std::setw(12) << les.labels[i] << " = "
                  << les.modules[i].decomposition().to_string() << "\n";
    return 0;
}

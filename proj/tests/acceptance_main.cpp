// Acceptance gate: runs the full self-check battery and prints one verdict
// line per criterion.  Exits nonzero — and prints the word FAIL — only when
// a criterion actually failed, so the harness can key on either signal.

#include "../tools/selfcheck.hpp"

#include <iostream>

int main() {
    std::vector<homkit::selfcheck::CheckResult> results = homkit::selfcheck::run_all();
    bool ok = homkit::selfcheck::print_report(results, std::cout);
    return ok ? 0 : 1;
}

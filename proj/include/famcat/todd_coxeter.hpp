#ifndef FAMCAT_TODD_COXETER_HPP
#define FAMCAT_TODD_COXETER_HPP

#include <optional>
#include <vector>

#include "famcat/groupoid.hpp"

namespace famcat {

// Finite group presentation. Relator letters encode generator i as 2i and its
// inverse as 2i+1.
struct Presentation {
  int generators = 0;
  std::vector<std::vector<int>> relators;
};

// Coset enumeration (HLT with coincidence handling) over the trivial
// subgroup. Returns the multiplication table of the presented group, or
// nullopt when more than max_cosets cosets would be needed — the group is then
// not confirmed finite within budget.
std::optional<FiniteGroup> todd_coxeter(const Presentation& p, int max_cosets);

}  // namespace famcat

#endif

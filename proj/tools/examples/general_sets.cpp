// Slice identities and lower bounds for an arbitrary set, and the 8AB = F_p
// covering check.

#include <iostream>

#include "subsum/subsum.hpp"

int main() {
  using namespace subsum;
  const auto a = DenseSet::from_elements(31, {0, 1, 2, 3, 5, 8, 13, 21});

  auto show = [](const Verdict& v) {
    std::cout << v.claim_id << ": lhs=" << v.lhs << " rhs=" << v.rhs << " -> " << to_string(v.pass) << "\n";
  };
  for (const auto& v : verify_exact_identities(a)) show(v);
  for (Sign s : {Sign::minus, Sign::plus})
    for (const auto& v : verify_slice_lower_bounds(a, s)) show(v);

  const auto b = DenseSet::from_elements(31, {1, 30, 5, 26});
  show(verify_glibichuk(a, b));
}

// The quadratic residues mod 7: spectrum, energies, Fourier bias, basis order.

#include <iostream>

#include "subsum/subsum.hpp"

int main() {
  using namespace subsum;
  const SubgroupDescriptor r(FieldContext::make(7), 3);

  const auto spec = correlation(r.elements(), r.elements());
  std::cout << "R =";
  for (u64 x : r.elements().elements()) std::cout << ' ' << x;
  std::cout << "\n(R o R)(s) =";
  for (u64 c : spec.counts) std::cout << ' ' << c;

  const auto m = energy_moments(spec);
  std::cout << "\nE = " << to_string(m.e2) << ", E3 = " << to_string(m.e3) << ", E4 = " << to_string(m.e4) << "\n";

  const auto prof = fourier_profile(r.elements(), false);
  std::cout << "rho(R) = " << prof.rho << " +- " << prof.err << " at xi = " << prof.argmax << "\n";

  const auto order = basis_order(r, 10, BasisTarget::fp_star);
  std::cout << "smallest l with F_7^* in lR: " << (order ? std::to_string(*order) : "> 10") << "\n";

  for (const auto& v : subgroup_report(r).verdicts)
    std::cout << v.claim_id << ": " << to_string(v.pass) << " (ratio " << v.ratio << ")\n";
}

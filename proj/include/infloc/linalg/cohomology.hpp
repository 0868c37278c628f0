#pragma once

#include <string>
#include <vector>

#include "infloc/linalg/matrix.hpp"

namespace infloc {

// C^lo -> C^{lo+1} -> ...; d[k] maps C^{lo+k} to C^{lo+k+1}.
struct CochainComplex {
  Ring ring;
  int lo = 0;
  std::vector<std::size_t> dims;
  std::vector<Matrix> d;

  // Builds from differentials alone; dims are read off the matrices.
  static CochainComplex from_differentials(const std::vector<Matrix>& ds, int lo = 0);
  int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
};

struct NotAComplex : InvalidInput {
  NotAComplex(int degree, std::size_t row, std::size_t col);
  int degree;
  std::size_t row, col;
};

struct GroupSummary {
  std::size_t rank = 0;
  std::vector<mpz_class> torsion;  // each >= 2, dividing the next
  bool operator==(const GroupSummary& o) const { return rank == o.rank && torsion == o.torsion; }
  bool operator!=(const GroupSummary& o) const { return !(*this == o); }
  bool is_zero() const { return rank == 0 && torsion.empty(); }
};

struct CohomologyReport {
  int lo = 0;
  std::vector<GroupSummary> H;

  GroupSummary at(int degree) const;
  // compares degreewise; degrees outside either range count as zero
  bool operator==(const CohomologyReport& o) const;
  bool operator!=(const CohomologyReport& o) const { return !(*this == o); }
  std::string str() const;
};

// Throws NotAComplex if some d[k+1] * d[k] != 0.
void check_complex(const CochainComplex& c);
CohomologyReport cohomology(const CochainComplex& c);
CohomologyReport cohomology(const std::vector<Matrix>& ds, int lo = 0);

// Invariants of the lattice quotient span(lattice) / span(sub); sub must lie in the
// span of lattice, which must be linearly independent. Integer vectors.
GroupSummary lattice_quotient(std::size_t n, const std::vector<Vec>& lattice, const std::vector<Vec>& sub);

// Cohomology of a complex of free Z/m modules given by integer matrices whose
// consecutive products vanish mod m.
CohomologyReport cohomology_mod(const CochainComplex& c, unsigned long m);

}  // namespace infloc

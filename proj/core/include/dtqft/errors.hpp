#pragma once
#include <stdexcept>
#include <string>
#include <vector>

namespace dtqft {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define DTQFT_ERROR(Name) \
  struct Name : Error { using Error::Error; }

DTQFT_ERROR(LabelError);
DTQFT_ERROR(GroupError);
DTQFT_ERROR(ChainError);
DTQFT_ERROR(DefectDataError);
DTQFT_ERROR(TopologyError);
DTQFT_ERROR(ColourError);
DTQFT_ERROR(DegeneracyError);
DTQFT_ERROR(ParallelError);
DTQFT_ERROR(FinenessError);
DTQFT_ERROR(ComposeError);
DTQFT_ERROR(SiteError);
DTQFT_ERROR(ParseError);

#undef DTQFT_ERROR

struct Violation {
  std::string where;
  std::string what;
  double residual = 0.0;
};

// Validators never throw; they collect violations.
struct ValidationReport {
  std::vector<Violation> items;
  double max_residual = 0.0;

  bool clean() const { return items.empty(); }
  void add(std::string where, std::string what, double residual = 0.0) {
    if (residual > max_residual) max_residual = residual;
    items.push_back({std::move(where), std::move(what), residual});
  }
  void merge(const ValidationReport& o) {
    for (const auto& v : o.items) add(v.where, v.what, v.residual);
  }
};

}  // namespace dtqft

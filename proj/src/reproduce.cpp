#include "benford/reproduce.hpp"

namespace benford {

std::vector<CriterionResult> run_acceptance(u64, std::ostream*,
                                            const std::vector<int>&) {
  return {};
}

}  // namespace benford

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oldroyd/solver/model.hpp"
#include "oldroyd/spectral/transform.hpp"

namespace oldroyd::closure {

enum class CheckStatus { kPass, kFail, kNotChecked };

std::string to_string(CheckStatus status);

struct Condition {
  std::string name;
  CheckStatus status = CheckStatus::kNotChecked;
  std::optional<double> value;
  std::string detail;
};

/// Discrete analogues of the admissibility conditions on (u0, rho0, sigma0)
/// and on the induced Gaussian kinetic data f0. Every condition appears in the
/// report; the ones that cannot be evaluated are listed as not checked.
struct AdmissibilityReport {
  std::vector<Condition> conditions;

  /// True iff no checked condition failed.
  bool passed() const;
  const Condition* find(const std::string& name) const;
  nlohmann::json to_json() const;
};

/// `center` is the bump centre used as origin of Lambda(x) = log(max(|x|, 1)),
/// with |x| the periodic distance capped at L/2.
AdmissibilityReport check_admissibility(const spectral::Transform& transform,
                                        const solver::OldroydState& initial,
                                        std::array<double, 2> center);

}  // namespace oldroyd::closure

#pragma once

#include <span>

#include "cstack/dataset.hpp"

namespace cstack {

/// Sum of the cost entries selected by (truth, decision) over all rows,
/// including the correct-classification entries c_tp / c_tn.
double total_cost(std::span<const int> truths, std::span<const int> decisions,
                  std::span<const InstanceCosts> costs);

/// Cost of the cheaper of the two naive policies (all-negative vs
/// all-positive), correct-classification entries included. A baseline of
/// exactly zero is an error: such a fold carries no cost signal.
double baseline_cost(std::span<const int> truths, std::span<const InstanceCosts> costs);

/// (baseline - total) / baseline. 1 = zero cost, 0 = no better than the best
/// naive policy. Values below 0 and above 1 are representable.
double savings(std::span<const int> truths, std::span<const int> decisions,
               std::span<const InstanceCosts> costs);

}  // namespace cstack

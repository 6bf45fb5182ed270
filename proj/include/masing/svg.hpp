#pragma once

#include <optional>
#include <string>
#include <vector>

#include "masing/curves.hpp"
#include "masing/graph.hpp"

namespace masing::svg {

/// Input limit gradient with the recovered curve (when present) overlaid.
std::string gradient_curves(const PeriodicCurve& input, const std::optional<PeriodicCurve>& recovered);

/// Image curves (x, y)(·, v_k) of up to `max_curves` evenly spaced levels.
std::string image_curves(const GraphPatch& patch, int max_curves = 16);

/// log10 |residual| per (level, node), levels bottom to top; undefined cells grey.
std::string residual_strip(const GraphPatch& patch);

}  // namespace masing::svg

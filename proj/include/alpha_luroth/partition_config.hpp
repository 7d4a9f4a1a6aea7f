#pragma once

#include <string_view>

#include "alpha_luroth/partition.hpp"

namespace alpha_luroth {

/// Builds a partition from a command-line spec: "luroth", "dyadic",
/// "geometric:R", "two-periodic:R,C", an inline JSON document, or the path of
/// a JSON file. JSON has the form
///   {"generator": "luroth" | "dyadic" | {"geometric": r}
///                 | {"two_periodic": {"ratio": r, "even_factor": c}}
///                 | {"table": [t_1, ...], "tail_ratio": r}}
/// where each ratio may be a number or a string such as "2/5".
/// Throws std::invalid_argument on malformed input.
Partition parse_partition(std::string_view spec);

/// The JSON form alone.
Partition partition_from_json(std::string_view json_text);

}  // namespace alpha_luroth

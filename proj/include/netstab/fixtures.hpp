#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "netstab/types.hpp"

namespace netstab {

/// Fixture ids accepted by load_fixture, e.g. "uk2010".
std::vector<std::string_view> fixture_ids();

/// CSV text of a shipped fixture, byte-identical to data/<id>_fragment.csv.
std::optional<std::string_view> fixture_csv(std::string_view id);

/// Throws KindError for an unknown id.
Matrix load_fixture(std::string_view id);

}  // namespace netstab

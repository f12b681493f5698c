#pragma once

#include <string_view>

namespace blockforge::detail {

std::string_view bundled_conway_text();

}  // namespace blockforge::detail

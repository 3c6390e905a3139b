#pragma once

#include <string_view>
#include <vector>

namespace surfknot::detail {

struct EmbeddedSchema {
  std::string_view name;
  std::string_view text;
};

const std::vector<EmbeddedSchema>& embedded_schemas();

}  // namespace surfknot::detail

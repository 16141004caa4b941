#include "netstab/fixtures.hpp"

#include <sstream>
#include <string>

#include "netstab/error.hpp"
#include "netstab/matrix_io.hpp"

namespace netstab {

namespace {

// 10x10 fragment of a UK 2010 daily-return correlation matrix.
constexpr std::string_view kUk2010 = R"(# kind=pearson
1,0.12,0,0.1,-0.05,-0.14,0.04,-0.02,-0.02,0.22
0.12,1,0.08,-0.03,-0.01,-0.03,-0.05,-0.03,0.05,-0.1
0,0.08,1,0.04,-0.06,0.02,0.02,-0.04,-0.04,-0.03
0.1,-0.03,0.04,1,-0.07,0.06,0.1,0.06,0.04,0.09
-0.05,-0.01,-0.06,-0.07,1,0.49,0.14,0.44,0.35,0.01
-0.14,-0.03,0.02,0.06,0.49,1,0.24,0.48,0.42,-0.09
0.04,-0.05,0.02,0.1,0.14,0.24,1,0.3,0.15,0
-0.02,-0.03,-0.04,0.06,0.44,0.48,0.3,1,0.45,0.04
-0.02,0.05,-0.04,0.04,0.35,0.42,0.15,0.45,1,0.01
0.22,-0.1,-0.03,0.09,0.01,-0.09,0,0.04,0.01,1
)";

}  // namespace

std::vector<std::string_view> fixture_ids() { return {"uk2010"}; }

std::optional<std::string_view> fixture_csv(std::string_view id) {
  if (id == "uk2010") return kUk2010;
  return std::nullopt;
}

Matrix load_fixture(std::string_view id) {
  const auto text = fixture_csv(id);
  if (!text) throw KindError("unknown fixture '" + std::string(id) + "'");
  std::istringstream in{std::string(*text)};
  return read_matrix_csv(in);
}

}  // namespace netstab

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ppforge::detail {

/// Given (input, image) code pairs, returns the lexicographically least
/// pair of distinct inputs sharing an image, if any.
inline std::optional<std::pair<std::uint64_t, std::uint64_t>> least_collision(
    std::vector<std::pair<std::uint64_t, std::uint64_t>> input_image) {
  std::sort(input_image.begin(), input_image.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second < b.second : a.first < b.first;
  });
  std::optional<std::pair<std::uint64_t, std::uint64_t>> best;
  for (std::size_t i = 0; i + 1 < input_image.size(); ++i) {
    if (input_image[i].second != input_image[i + 1].second) continue;
    // first two of a run are the least pair for that image
    if (i > 0 && input_image[i - 1].second == input_image[i].second) continue;
    const std::pair candidate{input_image[i].first, input_image[i + 1].first};
    if (!best || candidate < *best) best = candidate;
  }
  return best;
}

}  // namespace ppforge::detail

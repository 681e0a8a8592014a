#pragma once

// Data files compiled into the library by cmake/EmbedAssets.cmake.

#include <vector>

namespace wsim::portal {

struct Asset {
  const char* name;
  const char* content;
};

namespace assets {
const std::vector<Asset>& languages();
const std::vector<Asset>& templates();
}  // namespace assets

}  // namespace wsim::portal

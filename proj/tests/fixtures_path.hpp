#pragma once

#include <cstdlib>
#include <string>

inline std::string fixture_path(const std::string& name) {
  const char* dir = std::getenv("BLOCKFORGE_FIXTURES");
  return std::string(dir ? dir : BLOCKFORGE_SOURCE_FIXTURES) + "/" + name;
}

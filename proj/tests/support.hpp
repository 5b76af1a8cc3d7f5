#pragma once

#include <string>

#include "dlens/corpus.hpp"

inline std::string fixture_path(const std::string& name) {
  return std::string(DLENS_FIXTURES) + "/" + name;
}

inline std::string fixture(const std::string& name) { return dlens::read_file(fixture_path(name)); }

// Wraps statements in a class and method so snippets parse as a unit.
inline std::string in_method(const std::string& body) {
  return "class T {\n  int f(int a, int b, int c, int d) {\n" + body + "\n  }\n}\n";
}

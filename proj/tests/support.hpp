#pragma once

#include <string>

#include "tjit/io.hpp"
#include "tjit/syntax.hpp"

inline std::string sample_path(const std::string& name) {
  return std::string(TJIT_SAMPLES) + "/" + name;
}

inline tjit::Program sample(const std::string& name) {
  return tjit::parse_program(tjit::read_file(sample_path(name)));
}

inline tjit::Store store(const std::string& json) { return tjit::store_from_json(json); }

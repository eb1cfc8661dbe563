#pragma once

// Line-oriented family files:
//
//   format setfam-family 1
//   ground_size 5
//   name optional free text
//   provenance optional free text
//   sets 2
//   -
//   0 1 2 3 4
//
// One set per line after `sets N`, as strictly ascending 0-based indices;
// "-" is the empty set. Lines starting with '#' and blank lines are ignored.

#include <string>
#include <string_view>
#include <vector>

#include "setfam/family.hpp"

namespace setfam {

struct FamilyFile {
  int ground_size = 0;
  std::vector<std::vector<int>> sets;
  std::string name;
  std::string provenance;

  SetFamily to_family() const;
  static FamilyFile from_family(const SetFamily& f, std::string name = {},
                                std::string provenance = {});
};

// Throws Error(ErrorKind::Parse) with "line L, column C: ..." on bad input.
FamilyFile parse_family_file(std::string_view text);
FamilyFile read_family_file(const std::string& path);

// Canonical emission: sets ordered by ascending mask value.
std::string emit_family_file(const FamilyFile& file);
void write_family_file(const std::string& path, const FamilyFile& file);

std::string fnv1a64_hex(std::string_view bytes);

}  // namespace setfam

#include "setfam/family_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace setfam {

namespace {

[[noreturn]] void parse_error(int line, int column, const std::string& what) {
  fail(ErrorKind::Parse,
       "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

struct Token {
  std::string_view text;
  int column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

int parse_int(const Token& t, int line) {
  int value = 0;
  const auto* first = t.text.data();
  const auto* last = first + t.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    parse_error(line, t.column, "expected an integer, got '" + std::string(t.text) + "'");
  return value;
}

// Text after the keyword, trimmed.
std::string rest_of_line(std::string_view line, const Token& keyword) {
  std::size_t pos = static_cast<std::size_t>(keyword.column - 1) + keyword.text.size();
  while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  std::size_t end = line.size();
  while (end > pos && (line[end - 1] == ' ' || line[end - 1] == '\t')) --end;
  return std::string(line.substr(pos, end - pos));
}

}  // namespace

SetFamily FamilyFile::to_family() const {
  std::vector<Subset> members;
  for (const auto& s : sets) {
    std::uint64_t m = 0;
    for (int e : s) m |= std::uint64_t{1} << e;
    members.emplace_back(m);
  }
  return SetFamily(GroundSet(ground_size), std::move(members));
}

FamilyFile FamilyFile::from_family(const SetFamily& f, std::string name,
                                   std::string provenance) {
  FamilyFile file{.ground_size = f.ground().size(),
                  .name = std::move(name),
                  .provenance = std::move(provenance)};
  for (Subset s : f.members()) file.sets.push_back(s.elements());
  return file;
}

FamilyFile parse_family_file(std::string_view text) {
  FamilyFile file;
  bool have_format = false, have_ground = false;
  long expected_sets = -1;
  std::set<std::uint64_t> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto tokens = tokenize(line);
    if (tokens.empty() || tokens[0].text.front() == '#') continue;

    if (expected_sets >= 0) {
      if (static_cast<long>(file.sets.size()) == expected_sets)
        parse_error(line_no, tokens[0].column, "more set lines than declared");
      std::vector<int> set;
      std::uint64_t mask = 0;
      if (!(tokens.size() == 1 && tokens[0].text == "-")) {
        for (const auto& t : tokens) {
          const int e = parse_int(t, line_no);
          if (e < 0 || e >= file.ground_size)
            parse_error(line_no, t.column, "element " + std::to_string(e) + " outside ground");
          if (!set.empty() && e <= set.back())
            parse_error(line_no, t.column, "elements must be strictly ascending");
          set.push_back(e);
          mask |= std::uint64_t{1} << e;
        }
      }
      if (!seen.insert(mask).second)
        parse_error(line_no, tokens[0].column, "duplicate set");
      file.sets.push_back(std::move(set));
      continue;
    }

    const auto key = tokens[0].text;
    if (key == "format") {
      if (tokens.size() != 3 || tokens[1].text != "setfam-family")
        parse_error(line_no, tokens[0].column, "expected 'format setfam-family 1'");
      if (parse_int(tokens[2], line_no) != 1)
        parse_error(line_no, tokens[2].column, "unsupported format version");
      have_format = true;
    } else if (!have_format) {
      parse_error(line_no, tokens[0].column, "file must start with a format line");
    } else if (key == "ground_size") {
      if (tokens.size() != 2) parse_error(line_no, tokens[0].column, "expected 'ground_size N'");
      file.ground_size = parse_int(tokens[1], line_no);
      if (file.ground_size < 1 || file.ground_size > kMaxGround)
        parse_error(line_no, tokens[1].column, "ground_size must be in 1..64");
      have_ground = true;
    } else if (key == "name") {
      file.name = rest_of_line(line, tokens[0]);
    } else if (key == "provenance") {
      file.provenance = rest_of_line(line, tokens[0]);
    } else if (key == "sets") {
      if (!have_ground) parse_error(line_no, tokens[0].column, "ground_size must precede sets");
      if (tokens.size() != 2) parse_error(line_no, tokens[0].column, "expected 'sets N'");
      expected_sets = parse_int(tokens[1], line_no);
      if (expected_sets < 0) parse_error(line_no, tokens[1].column, "negative set count");
    } else {
      parse_error(line_no, tokens[0].column, "unknown key '" + std::string(key) + "'");
    }
  }
  if (!have_format) parse_error(line_no, 1, "missing format line");
  if (expected_sets < 0) parse_error(line_no, 1, "missing 'sets' section");
  if (static_cast<long>(file.sets.size()) != expected_sets)
    parse_error(line_no, 1, "expected " + std::to_string(expected_sets) + " sets, found " +
                                std::to_string(file.sets.size()));
  return file;
}

FamilyFile read_family_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_family_file(buf.str());
}

std::string emit_family_file(const FamilyFile& file) {
  // Canonical order comes from the SetFamily round trip.
  const FamilyFile canon = FamilyFile::from_family(file.to_family(), file.name, file.provenance);
  std::ostringstream out;
  out << "format setfam-family 1\n";
  out << "ground_size " << canon.ground_size << "\n";
  if (!canon.name.empty()) out << "name " << canon.name << "\n";
  if (!canon.provenance.empty()) out << "provenance " << canon.provenance << "\n";
  out << "sets " << canon.sets.size() << "\n";
  for (const auto& s : canon.sets) {
    if (s.empty()) {
      out << "-\n";
      continue;
    }
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    out << "\n";
  }
  return out.str();
}

void write_family_file(const std::string& path, const FamilyFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  out << emit_family_file(file);
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace setfam

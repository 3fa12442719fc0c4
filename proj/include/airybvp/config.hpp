#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>

#include "airybvp/core.hpp"

namespace airy {

class ConfigError : public InputError {
 public:
  ConfigError(int line, const std::string& what) : InputError("config", what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Flat INI: [section] headers, key = value lines, whole-line '#' or ';' comments.
class IniDocument {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };
  using Section = std::map<std::string, Entry>;

  static IniDocument parse(std::istream& in);
  static IniDocument parse(const std::string& text);
  static IniDocument load(const std::filesystem::path& path);

  void set(const std::string& section, const std::string& key, const std::string& value);
  const Entry* find(const std::string& section, const std::string& key) const;
  const std::map<std::string, Section>& sections() const { return sections_; }
  int section_line(const std::string& section) const;
  std::string serialize() const;

 private:
  std::map<std::string, Section> sections_;
  std::map<std::string, int> section_lines_;
  std::vector<std::string> order_;
};

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
double parse_double(const std::string& text);
/// "re" or "re,im"
std::string format_complex(Complex z);
Complex parse_complex(const std::string& text);

struct DatumConfig {
  std::string kind = "poly";
  int mode = 1;
  double lo = 0.0, hi = 0.5;            // step
  double center = 0.5, width = 0.25;    // bump (half-width)
  std::string path;                     // samples file
  std::optional<Regularity> regularity;
};

struct NumericsConfig {
  int N = 128;
  int P = 256;
  double dt = 1e-4;
  double T = 0.01;
  int degree = 192;
  int substeps = 1;
  bool reference = true;
  bool cesaro = false;
};

struct AnalysisConfig {
  int q_max = 8;
  int decay_lo = 16;
  int decay_hi = 0;  // 0: use N
  int jump_points = 0;  // 0: use P
  int jump_window = 1;
  double jump_factor = 5.0;
  double jump_floor = 0.05;
  int jump_merge = 0;
};

struct ScenarioConfig {
  BoundarySpec bc;
  DatumConfig datum;
  NumericsConfig numerics;
  AnalysisConfig analysis;
  std::filesystem::path base_dir;  // for relative sample paths
};

/// Validates sections, keys and values; errors carry the offending line.
ScenarioConfig parse_scenario(const IniDocument& doc);
IniDocument to_ini(const ScenarioConfig& cfg);

BoundarySpec parse_boundary(const IniDocument& doc);
void write_boundary(const BoundarySpec& bc, IniDocument& doc);

InitialDatum make_datum(const DatumConfig& d, const std::filesystem::path& base_dir);

struct CatalogEntry {
  std::string family;
  std::string description;
  std::vector<std::pair<std::string, std::string>> keys;  // bc.* keys with example values
};

const std::vector<CatalogEntry>& family_catalog();
const std::vector<std::string>& datum_kinds();

}  // namespace airy

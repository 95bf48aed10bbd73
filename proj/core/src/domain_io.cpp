#include "weyl/domain_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "weyl/errors.hpp"

namespace weyl {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw InputError("cannot open " + file.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return std::to_string(line) + ":" + std::to_string(column);
}

[[noreturn]] void field_error(const std::string& path, const std::string& message) {
  throw InputError("field '" + path + "': " + message);
}

double number_field(const json& node, const std::string& key, const std::string& path) {
  const auto it = node.find(key);
  if (it == node.end()) field_error(path + key, "missing");
  if (!it->is_number()) field_error(path + key, "expected a number");
  const double value = it->get<double>();
  if (!std::isfinite(value)) field_error(path + key, "must be finite");
  // Every scalar domain parameter (sides, radius, exponent, cutoff, h) is positive.
  if (!(value > 0.0)) field_error(path + key, "must be positive");
  return value;
}

double first_number_field(const json& node, std::initializer_list<const char*> keys,
                          const std::string& path) {
  for (const char* key : keys) {
    if (node.contains(key)) return number_field(node, key, path);
  }
  field_error(path + *keys.begin(), "missing");
}

DomainSpec parse_node(const json& node, const std::string& path,
                      const std::filesystem::path& base_dir) {
  if (!node.is_object()) field_error(path.empty() ? "<root>" : path, "expected an object");
  const auto kind_it = node.find("kind");
  if (kind_it == node.end() || !kind_it->is_string()) {
    field_error(path + "kind", "missing or not a string");
  }
  const std::string kind = kind_it->get<std::string>();
  try {
    if (kind == "interval") {
      return DomainSpec::interval(number_field(node, "a", path));
    }
    if (kind == "rectangle") {
      return DomainSpec::rectangle(number_field(node, "a", path), number_field(node, "b", path));
    }
    if (kind == "disk") {
      return DomainSpec::disk(first_number_field(node, {"radius", "R", "r"}, path));
    }
    if (kind == "cusp") {
      return DomainSpec::cusp(number_field(node, "p", path), number_field(node, "x_max", path));
    }
    if (kind == "union") {
      const auto parts_it = node.find("parts");
      if (parts_it == node.end() || !parts_it->is_array()) {
        field_error(path + "parts", "missing or not an array");
      }
      std::vector<UnionPart> parts;
      for (std::size_t k = 0; k < parts_it->size(); ++k) {
        const std::string sub = path + "parts[" + std::to_string(k) + "].";
        const json& member = (*parts_it)[k];
        UnionPart part{parse_node(member, sub, base_dir), {0.0, 0.0}};
        if (const auto off = member.find("offset"); off != member.end()) {
          if (!off->is_array() || off->empty() || off->size() > 2) {
            field_error(sub + "offset", "expected [dx] or [dx, dy]");
          }
          for (std::size_t axis = 0; axis < off->size(); ++axis) {
            if (!(*off)[axis].is_number()) field_error(sub + "offset", "expected numbers");
            part.offset[axis] = (*off)[axis].get<double>();
          }
        }
        parts.push_back(std::move(part));
      }
      return DomainSpec::union_of(std::move(parts));
    }
    if (kind == "raster") {
      const auto path_it = node.find("path");
      if (path_it == node.end() || !path_it->is_string()) {
        field_error(path + "path", "missing or not a string");
      }
      const double h = number_field(node, "h", path);
      std::filesystem::path mask_path = path_it->get<std::string>();
      if (mask_path.is_relative()) mask_path = base_dir / mask_path;
      return DomainSpec::raster(load_mask(mask_path, h));
    }
  } catch (const InputError& e) {
    const std::string what = e.what();
    if (what.rfind("field '", 0) == 0) throw;
    field_error(path.empty() ? kind : path + "kind", what);
  }
  field_error(path + "kind", "unknown domain kind '" + kind + "'");
}

void require_spacing(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw InputError("mask spacing h must be positive, got " + std::to_string(h));
  }
}

}  // namespace

DomainSpec parse_domain(std::string_view text, const std::filesystem::path& base_dir) {
  json document;
  try {
    document = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InputError("malformed domain file at " + line_column(text, e.byte) + ": " + e.what());
  }
  return parse_node(document, "", base_dir);
}

DomainSpec load_domain(const std::filesystem::path& file) {
  const std::string text = read_file(file);
  try {
    return parse_domain(text, file.parent_path());
  } catch (const InputError& e) {
    throw InputError(file.string() + ": " + e.what());
  }
}

GridMask parse_ascii_mask(std::string_view text, double h) {
  require_spacing(h);
  std::vector<std::string_view> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(start, end - start);
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (!row.empty()) rows.push_back(row);
    start = end + 1;
  }
  std::vector<LatticePoint> nodes;
  const long height = static_cast<long>(rows.size());
  for (long r = 0; r < height; ++r) {
    const auto row = rows[static_cast<std::size_t>(r)];
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] == '#') {
        nodes.push_back({static_cast<long>(c) + 1, height - r});
      } else if (row[c] != '.' && row[c] != ' ') {
        throw InputError("ASCII mask row " + std::to_string(r + 1) + ", column " +
                         std::to_string(c + 1) + ": unexpected character '" +
                         std::string(1, row[c]) + "'");
      }
    }
  }
  if (nodes.empty()) throw InputError("ASCII mask has no interior ('#') pixels");
  return GridMask(h, 2, std::move(nodes));
}

GridMask parse_pgm_mask(std::string_view bytes, double h) {
  require_spacing(h);
  std::size_t pos = 0;
  auto next_token = [&]() -> std::string {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
        ++pos;
      } else {
        break;
      }
    }
    const std::size_t begin = pos;
    while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
    return std::string(bytes.substr(begin, pos - begin));
  };
  if (next_token() != "P5") throw InputError("PGM mask: expected magic 'P5'");
  long width = 0, height = 0, maxval = 0;
  try {
    width = std::stol(next_token());
    height = std::stol(next_token());
    maxval = std::stol(next_token());
  } catch (const std::exception&) {
    throw InputError("PGM mask: malformed header");
  }
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535) {
    throw InputError("PGM mask: invalid header values");
  }
  ++pos;  // single whitespace byte after maxval
  const std::size_t sample_bytes = maxval < 256 ? 1 : 2;
  const std::size_t needed = static_cast<std::size_t>(width * height) * sample_bytes;
  if (bytes.size() < pos + needed) throw InputError("PGM mask: truncated pixel data");

  std::vector<LatticePoint> nodes;
  for (long r = 0; r < height; ++r) {
    for (long c = 0; c < width; ++c) {
      const std::size_t at = pos + static_cast<std::size_t>(r * width + c) * sample_bytes;
      long value = static_cast<unsigned char>(bytes[at]);
      if (sample_bytes == 2) value = value * 256 + static_cast<unsigned char>(bytes[at + 1]);
      if (2 * value > maxval) nodes.push_back({c + 1, height - r});
    }
  }
  if (nodes.empty()) throw InputError("PGM mask has no interior pixels");
  return GridMask(h, 2, std::move(nodes));
}

GridMask load_mask(const std::filesystem::path& file, double h) {
  const std::string content = read_file(file);
  if (content.rfind("P5", 0) == 0) return parse_pgm_mask(content, h);
  return parse_ascii_mask(content, h);
}

}  // namespace weyl

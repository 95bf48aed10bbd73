#pragma once

#include <filesystem>
#include <string_view>

#include "weyl/domain.hpp"
#include "weyl/grid_mask.hpp"

namespace weyl {

/// Parses a domain description such as
///   {"kind": "rectangle", "a": 1.0, "b": 1.0}
///   {"kind": "disk", "radius": 1.0}
///   {"kind": "cusp", "p": 2.0, "x_max": 20.0}
///   {"kind": "union", "parts": [{"kind": "disk", "radius": 1, "offset": [3, 0]}, ...]}
///   {"kind": "raster", "path": "mask.pgm", "h": 0.015625}
/// Raster paths are resolved against `base_dir`. Errors are InputError with a
/// line:column or field-path diagnostic.
DomainSpec parse_domain(std::string_view text, const std::filesystem::path& base_dir = {});

DomainSpec load_domain(const std::filesystem::path& file);

/// Mask from ASCII art: '#' interior, '.' exterior, one text line per row, top
/// row first. Pixel (column c, row r) of an R-row picture becomes lattice node
/// (c + 1, R - r).
GridMask parse_ascii_mask(std::string_view text, double h);

/// Binary PGM (P5); pixels brighter than maxval/2 are interior. Same pixel to
/// node mapping as parse_ascii_mask.
GridMask parse_pgm_mask(std::string_view bytes, double h);

/// Dispatches on content: files starting with "P5" are PGM, anything else is
/// ASCII art.
GridMask load_mask(const std::filesystem::path& file, double h);

}  // namespace weyl

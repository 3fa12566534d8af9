#pragma once

#include <string>

#include "qmap/maps.hpp"

namespace qmap {

// Polynomial expressions: rationals, i, sqrt(constant), variable names,
// + - * / ^ with explicit '*'.  Division only by nonzero constants.
Poly parse_poly(const std::string& text, TowerCtx& ctx);
Poly parse_poly(const std::string& text);

// Both components must use only x, y, z and have degree at most 2.
QuadMap parse_map(const std::string& f, const std::string& g, TowerCtx& ctx);
QuadMap parse_map(const std::string& f, const std::string& g);

// (f, g) source/target affine maps written as polynomial images
SourceAut parse_source(const std::string& x, const std::string& y, const std::string& z, TowerCtx& ctx);
TargetAut parse_target(const std::string& p, const std::string& q, TowerCtx& ctx);

}  // namespace qmap

#pragma once

#include <string>
#include <vector>

#include "slicekit/sliceregular.hpp"

namespace slicekit {

// Algebra file: {"name": str, "dim": n, "table": [[[c_ijk]]]} with
// table[i][j][k] the coefficient of e_k in e_i e_j.
AlgebraPtr load_algebra_json(const std::string& path);
void save_algebra_json(const std::string& path, const AlgebraPtr& algebra);

// Units file: list of coefficient vectors.
std::vector<Vec> load_units_json(const std::string& path);
void save_units_json(const std::string& path, const std::vector<Vec>& units);

// Path file: CSV with header t,x1..xd,y1..yd; first row must be real.
SlicePath load_path_csv(const std::string& path);
void save_path_csv(const std::string& path, const SlicePath& p);

// Domain file: {"variant": "whole_cone"} or
// {"variant": "circularized", "boxes": [{x_lo,x_hi,y_lo,y_hi}]} or
// {"variant": "slicewise", "slices": [{"unit": [...], "boxes": [...]}]}.
DomainSpec load_domain_json(const std::string& path, const AlgebraPtr& algebra);

// Polynomial file: {"d": int, "algebra": builtin id (optional), "terms":
// [{"alpha": [...], "coeff": [...]}]}. When the file names an algebra it must
// agree with the one passed in.
SlicePolynomial load_poly_json(const std::string& path, const AlgebraPtr& algebra);
void save_poly_json(const std::string& path, const SlicePolynomial& p);

}  // namespace slicekit

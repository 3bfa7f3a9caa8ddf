#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "slicekit/io.hpp"
#include "slicekit/repform.hpp"
#include "slicekit/rng.hpp"
#include "slicekit/sliceregular.hpp"

using nlohmann::json;
using namespace slicekit;

namespace {

// 0 = all checks passed, 1 = a tolerance check failed, 2 = structural error
// (bad input, unusable configuration).
constexpr int kPass = 0;
constexpr int kTolFail = 1;
constexpr int kStructural = 2;

AlgebraPtr resolve_algebra(const std::string& spec) {
    if (std::filesystem::exists(spec)) return load_algebra_json(spec);
    return builtin_algebra(spec);
}

json vec_json(const Vec& v) {
    json j = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
    return j;
}

void write_report(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << j.dump(2) << "\n";
}

Element load_target_unit(const std::string& path, const AlgebraPtr& algebra) {
    const auto rows = load_units_json(path);
    if (rows.size() != 1)
        throw std::runtime_error(path + ": target file must hold exactly one unit");
    return Element(algebra, rows[0]);
}

std::vector<Element> to_elements(const std::vector<Vec>& rows, const AlgebraPtr& algebra) {
    std::vector<Element> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.emplace_back(algebra, r);
    return out;
}

// Polynomial samples along the path on each slice of the tuple:
// values[s][l] = P(gamma^{J_l}(t_s)).
std::vector<std::vector<Vec>> sample_on_slices(const SlicePolynomial& poly,
                                               const SlicePath& path,
                                               const std::vector<Element>& units) {
    std::vector<std::vector<Vec>> values(path.size());
    for (std::size_t l = 0; l < units.size(); ++l) {
        const auto points = embed_path(path, units[l]);
        for (std::size_t s = 0; s < points.size(); ++s)
            values[s].push_back(eval(poly, points[s]).coeffs());
    }
    return values;
}

int cmd_table_gen(const std::string& algebra_spec, const std::string& out) {
    save_algebra_json(out, resolve_algebra(algebra_spec));
    return kPass;
}

int cmd_table_check(const std::string& algebra_spec, const std::string& ref,
                    const std::string& out, int max_listed) {
    const AlgebraPtr got = resolve_algebra(algebra_spec);
    const AlgebraPtr want = load_algebra_json(ref);
    json mismatches = json::array();
    int count = 0;
    if (got->dim() != want->dim()) {
        std::cout << "dimension mismatch: expected " << want->dim() << ", got " << got->dim()
                  << "\n";
        count = -1;
    } else {
        const std::size_t dim = got->dim();
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                bool same = true;
                for (std::size_t k = 0; k < dim; ++k)
                    if (got->structure(i, j, k) != want->structure(i, j, k)) same = false;
                if (same) continue;
                ++count;
                if (count <= max_listed) {
                    std::cout << "e_" << i << " * e_" << j
                              << ": expected " << vec_json(want->basis_product(i, j)).dump()
                              << ", got " << vec_json(got->basis_product(i, j)).dump() << "\n";
                }
                mismatches.push_back({{"i", i},
                                      {"j", j},
                                      {"expected", vec_json(want->basis_product(i, j))},
                                      {"got", vec_json(got->basis_product(i, j))}});
            }
        }
        if (count > max_listed)
            std::cout << "... " << (count - max_listed) << " further mismatching products\n";
    }
    if (!out.empty())
        write_report(out, json{{"algebra", got->name()},
                               {"match", count == 0},
                               {"mismatch_count", count},
                               {"mismatches", mismatches}});
    if (count == 0) {
        std::cout << "table matches reference (" << got->dim() << "^2 products)\n";
        return kPass;
    }
    return count < 0 ? kStructural : kTolFail;
}

int cmd_units_scan(const std::string& algebra_spec, int count, std::uint64_t seed, double tol,
                   const std::string& out) {
    const AlgebraPtr algebra = resolve_algebra(algebra_spec);
    Rng rng(seed);
    json units = json::array();
    int slice_count = 0;
    for (int i = 0; i < count; ++i) {
        const Element u = random_imaginary_unit(algebra, rng);
        const bool slice = is_slice_unit(u, tol);
        slice_count += slice ? 1 : 0;
        units.push_back({{"coeffs", vec_json(u.coeffs())}, {"slice", slice}});
    }
    const json rep{{"algebra", algebra->name()}, {"count", count},
                   {"seed", seed},              {"tol", tol},
                   {"slice_count", slice_count}, {"imaginary_only_count", count - slice_count},
                   {"units", units}};
    if (!out.empty()) write_report(out, rep);
    std::cout << "sampled " << count << " imaginary units: " << slice_count << " slice, "
              << (count - slice_count) << " imaginary-only\n";
    return kPass;
}

int cmd_reconstruct(const std::string& algebra_spec, const std::string& units_file,
                    const std::string& target_file, const std::string& path_file,
                    const std::string& poly_file, const std::string& mode, double tol,
                    const std::string& out) {
    const AlgebraPtr algebra = resolve_algebra(algebra_spec);
    const auto units = to_elements(load_units_json(units_file), algebra);
    const Element target = load_target_unit(target_file, algebra);
    const SlicePath path = load_path_csv(path_file);
    const SlicePolynomial poly = load_poly_json(poly_file, algebra);

    const auto values = sample_on_slices(poly, path, units);
    const auto direct_points = embed_path(path, target);

    std::vector<Vec> rec;
    Eigen::Index kernel_dim = 0;
    bool membership = true;
    if (mode == "pinv") {
        const ZetaSystem sys = build_zeta(make_unit_tuple(units));
        kernel_dim = sys.kernel_dim();
        membership = kernel_membership(target, sys);
        rec = reconstruct_path(values, sys, target);
    } else {  // two-point
        if (units.size() != 2)
            throw std::runtime_error("two-point mode needs exactly two units, got " +
                                     std::to_string(units.size()));
        const Mat m = two_point_inverse(units[0], units[1]);
        const Mat lmat = left_mul_matrix(target);
        const Eigen::Index dim = lmat.rows();
        for (const auto& sample : values) {
            Vec stack(2 * dim);
            stack << sample[0], sample[1];
            const Vec f = m * stack;
            rec.push_back(f.head(dim) + lmat * f.tail(dim));
        }
    }

    double max_abs = 0.0, max_rel = 0.0;
    json rec_json = json::array();
    for (std::size_t s = 0; s < rec.size(); ++s) {
        const Vec direct = eval(poly, direct_points[s]).coeffs();
        const double abs_err = (rec[s] - direct).lpNorm<Eigen::Infinity>();
        max_abs = std::max(max_abs, abs_err);
        max_rel = std::max(max_rel, abs_err / (1.0 + direct.norm()));
        rec_json.push_back(vec_json(rec[s]));
    }

    json junits = json::array();
    for (const auto& u : units) junits.push_back(vec_json(u.coeffs()));
    const json rep{{"algebra", algebra->name()},
                   {"mode", mode},
                   {"I", vec_json(target.coeffs())},
                   {"J", junits},
                   {"kernel_dim", kernel_dim},
                   {"membership", membership},
                   {"tol", tol},
                   {"residuals", {{"max_abs_error", max_abs}, {"max_rel_error", max_rel}}},
                   {"values", rec_json}};
    if (!out.empty()) write_report(out, rep);
    std::cout << "reconstructed " << rec.size() << " samples, max abs error " << max_abs << "\n";
    return max_abs <= tol ? kPass : kTolFail;
}

int cmd_stem(const std::string& algebra_spec, const std::string& units_file,
             const std::string& path_file, const std::string& poly_file, double tol,
             const std::string& out) {
    const AlgebraPtr algebra = resolve_algebra(algebra_spec);
    const auto units = to_elements(load_units_json(units_file), algebra);
    const SlicePath path = load_path_csv(path_file);
    const SlicePolynomial poly = load_poly_json(poly_file, algebra);

    const ZetaSystem sys = build_zeta(make_unit_tuple(units));
    const auto values = sample_on_slices(poly, path, units);

    double max_res = 0.0;
    json stems = json::array();
    for (const auto& sample : values) {
        const StemResult r = stem_solve(sample, sys);
        max_res = std::max(max_res, r.residual);
        stems.push_back({{"a", vec_json(r.f.a)}, {"b", vec_json(r.f.b)}, {"residual", r.residual}});
    }

    json junits = json::array();
    for (const auto& u : units) junits.push_back(vec_json(u.coeffs()));
    const json rep{{"algebra", algebra->name()},
                   {"J", junits},
                   {"kernel_dim", sys.kernel_dim()},
                   {"tol", tol},
                   {"residuals", {{"max_stem_residual", max_res}}},
                   {"stems", stems}};
    if (!out.empty()) write_report(out, rep);
    std::cout << "solved " << stems.size() << " stems, max residual " << max_res << "\n";
    return max_res <= tol ? kPass : kTolFail;
}

int cmd_holo(const std::string& algebra_spec, const std::string& poly_file,
             const std::string& target_file, double h, double tol, std::uint64_t seed,
             const std::string& out) {
    const AlgebraPtr algebra = resolve_algebra(algebra_spec);
    const SlicePolynomial poly = load_poly_json(poly_file, algebra);
    const Element target = load_target_unit(target_file, algebra);

    const auto grid = make_grid(poly.d(), 5, seed, 10.0 * h);
    const CrReport rep = cr_residual(slice_evaluator(poly, target), target, grid, h, tol);

    const json jrep{{"algebra", algebra->name()},
                    {"I", vec_json(target.coeffs())},
                    {"h", h},
                    {"tol", tol},
                    {"seed", seed},
                    {"grid_points", grid.size()},
                    {"per_variable", rep.per_variable},
                    {"max_residual", rep.max_residual},
                    {"scale", rep.scale},
                    {"pass", rep.pass}};
    if (!out.empty()) write_report(out, jrep);
    std::cout << "slice regularity residual " << rep.max_residual << " (scale " << rep.scale
              << "): " << (rep.pass ? "pass" : "FAIL") << "\n";
    return rep.pass ? kPass : kTolFail;
}

int cmd_split(const std::string& algebra_spec, const std::string& poly_file,
              const std::string& target_file, double tol, std::uint64_t seed,
              const std::string& out) {
    const AlgebraPtr algebra = resolve_algebra(algebra_spec);
    const SlicePolynomial poly = load_poly_json(poly_file, algebra);
    const Element target = load_target_unit(target_file, algebra);

    const double h = 1e-5;
    const auto grid = make_grid(poly.d(), 5, seed, 10.0 * h);
    const auto f = slice_evaluator(poly, target);
    const SplitDecomposition dec = split(f, target, grid);

    const Mat c2 = standard_structure(1);  // [[0,-1],[1,0]] on the component plane
    json comps = json::array();
    bool cr_ok = true;
    for (Eigen::Index l = 0; l < dec.basis.n; ++l) {
        const CrReport rep =
            cr_residual(split_component_evaluator(f, dec.basis, l), c2, grid, h, tol);
        cr_ok = cr_ok && rep.pass;
        comps.push_back({{"component", l}, {"max_residual", rep.max_residual}, {"pass", rep.pass}});
    }
    const bool pass = cr_ok && dec.recomposition_residual <= 1e-12;

    const json rep{{"algebra", algebra->name()},
                   {"I", vec_json(target.coeffs())},
                   {"components", dec.basis.n},
                   {"tol", tol},
                   {"seed", seed},
                   {"grid_points", grid.size()},
                   {"recomposition_residual", dec.recomposition_residual},
                   {"component_cr", comps},
                   {"pass", pass}};
    if (!out.empty()) write_report(out, rep);
    std::cout << "split into " << dec.basis.n << " components, recomposition residual "
              << dec.recomposition_residual << ": " << (pass ? "pass" : "FAIL") << "\n";
    return pass ? kPass : kTolFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"slice analysis toolkit"};
    app.require_subcommand(1);

    std::string algebra_spec, out, ref, units_file, target_file, path_file, poly_file;
    std::string mode = "pinv";
    // One tolerance variable per subcommand; a shared variable would be
    // overwritten by whichever default is registered last.
    double scan_tol = 1e-10;
    double rec_tol = 1e-9;
    double stem_tol = 1e-10;
    double holo_tol = 1e-6;
    double split_tol = 1e-6;
    double h = 1e-5;
    std::uint64_t seed = 0;
    int count = 100;
    int max_listed = 20;

    auto* table = app.add_subcommand("table", "generate or check multiplication tables");
    table->require_subcommand(1);
    auto* tgen = table->add_subcommand("gen", "write an algebra file");
    tgen->add_option("--algebra", algebra_spec, "builtin id or algebra file")->required();
    tgen->add_option("--out", out, "output algebra JSON")->required();
    auto* tcheck = table->add_subcommand("check", "compare against a reference table");
    tcheck->add_option("--algebra", algebra_spec)->required();
    tcheck->add_option("--ref", ref, "reference algebra JSON")->required();
    tcheck->add_option("--out", out, "optional JSON report");
    tcheck->add_option("--max-listed", max_listed, "mismatch lines to print");

    auto* units = app.add_subcommand("units", "sample and classify units");
    units->require_subcommand(1);
    auto* uscan = units->add_subcommand("scan", "sample imaginary units, test sliceness");
    uscan->add_option("--algebra", algebra_spec)->required();
    uscan->add_option("--count", count, "number of samples");
    uscan->add_option("--seed", seed);
    uscan->add_option("--tol", scan_tol, "slice-unit tolerance");
    uscan->add_option("--out", out, "JSON report");

    auto* rec = app.add_subcommand("reconstruct", "rebuild slice values from sampled slices");
    rec->add_option("--algebra", algebra_spec)->required();
    rec->add_option("--units", units_file, "tuple J (units JSON)")->required();
    rec->add_option("--target", target_file, "target unit I (units JSON, one entry)")->required();
    rec->add_option("--path", path_file, "path CSV")->required();
    rec->add_option("--poly", poly_file, "polynomial JSON")->required();
    rec->add_option("--mode", mode, "pinv|two-point")
        ->check(CLI::IsMember({"pinv", "two-point"}));
    rec->add_option("--tol", rec_tol, "max abs error gate");
    rec->add_option("--seed", seed);
    rec->add_option("--out", out, "JSON report");

    auto* stem = app.add_subcommand("stem", "solve for stem values along a path");
    stem->add_option("--algebra", algebra_spec)->required();
    stem->add_option("--units", units_file)->required();
    stem->add_option("--path", path_file)->required();
    stem->add_option("--poly", poly_file)->required();
    stem->add_option("--tol", stem_tol);
    stem->add_option("--out", out, "JSON report");

    auto* holo = app.add_subcommand("holo", "finite-difference slice regularity check");
    holo->add_option("--algebra", algebra_spec)->required();
    holo->add_option("--poly", poly_file)->required();
    holo->add_option("--target", target_file)->required();
    holo->add_option("--step", h, "finite-difference step");
    holo->add_option("--tol", holo_tol);
    holo->add_option("--seed", seed);
    holo->add_option("--out", out, "JSON report");

    auto* spl = app.add_subcommand("split", "decompose slice values into complex components");
    spl->add_option("--algebra", algebra_spec)->required();
    spl->add_option("--poly", poly_file)->required();
    spl->add_option("--target", target_file)->required();
    spl->add_option("--tol", split_tol, "component regularity gate");
    spl->add_option("--seed", seed);
    spl->add_option("--out", out, "JSON report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (tgen->parsed()) return cmd_table_gen(algebra_spec, out);
        if (tcheck->parsed()) return cmd_table_check(algebra_spec, ref, out, max_listed);
        if (uscan->parsed()) return cmd_units_scan(algebra_spec, count, seed, scan_tol, out);
        if (rec->parsed())
            return cmd_reconstruct(algebra_spec, units_file, target_file, path_file, poly_file,
                                   mode, rec_tol, out);
        if (stem->parsed())
            return cmd_stem(algebra_spec, units_file, path_file, poly_file, stem_tol, out);
        if (holo->parsed())
            return cmd_holo(algebra_spec, poly_file, target_file, h, holo_tol, seed, out);
        if (spl->parsed())
            return cmd_split(algebra_spec, poly_file, target_file, split_tol, seed, out);
    } catch (const std::exception& e) {
        std::cerr << "slicekit: error: " << e.what() << "\n";
        return kStructural;
    }
    return kStructural;
}

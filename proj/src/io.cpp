#include "slicekit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace slicekit {

namespace {

using nlohmann::json;

std::runtime_error bad_file(const std::string& path, const std::string& what) {
    return std::runtime_error(path + ": " + what);
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bad_file(path, "cannot open");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw bad_file(path, std::string("invalid JSON: ") + e.what());
    }
    return j;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw bad_file(path, "cannot open for writing");
    out << j.dump(2) << "\n";
}

Vec vec_from_json(const json& j) {
    if (!j.is_array()) throw std::runtime_error("expected a JSON array of numbers");
    Vec v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    return v;
}

json vec_to_json(const Vec& v) {
    json j = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
    return j;
}

}  // namespace

AlgebraPtr load_algebra_json(const std::string& path) {
    const json j = read_json(path);
    if (!j.contains("name") || !j.contains("dim") || !j.contains("table"))
        throw bad_file(path, "algebra file needs name, dim and table");
    const auto dim = j["dim"].get<std::size_t>();
    const auto& t = j["table"];
    if (!t.is_array() || t.size() != dim) throw bad_file(path, "table must have dim rows");
    std::vector<double> table(dim * dim * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (!t[i].is_array() || t[i].size() != dim)
            throw bad_file(path, "table row has wrong length");
        for (std::size_t jj = 0; jj < dim; ++jj) {
            const auto& cell = t[i][jj];
            if (!cell.is_array() || cell.size() != dim)
                throw bad_file(path, "table cell has wrong length");
            for (std::size_t k = 0; k < dim; ++k)
                table[(i * dim + jj) * dim + k] = cell[k].get<double>();
        }
    }
    try {
        return AlgebraSpec::make(j["name"].get<std::string>(), dim, std::move(table));
    } catch (const std::invalid_argument& e) {
        throw bad_file(path, e.what());
    }
}

void save_algebra_json(const std::string& path, const AlgebraPtr& algebra) {
    const std::size_t dim = algebra->dim();
    json t = json::array();
    for (std::size_t i = 0; i < dim; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < dim; ++j) {
            json cell = json::array();
            for (std::size_t k = 0; k < dim; ++k) cell.push_back(algebra->structure(i, j, k));
            row.push_back(std::move(cell));
        }
        t.push_back(std::move(row));
    }
    write_json(path, json{{"name", algebra->name()}, {"dim", dim}, {"table", std::move(t)}});
}

std::vector<Vec> load_units_json(const std::string& path) {
    const json j = read_json(path);
    if (!j.is_array()) throw bad_file(path, "units file must be a list of coefficient vectors");
    std::vector<Vec> units;
    for (const auto& row : j) units.push_back(vec_from_json(row));
    return units;
}

void save_units_json(const std::string& path, const std::vector<Vec>& units) {
    json j = json::array();
    for (const auto& u : units) j.push_back(vec_to_json(u));
    write_json(path, j);
}

SlicePath load_path_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bad_file(path, "cannot open");
    std::string line;
    if (!std::getline(in, line)) throw bad_file(path, "empty path file");

    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(tok);
        return out;
    };

    const auto header = split(line);
    if (header.size() < 3 || header.size() % 2 == 0 || header[0] != "t")
        throw bad_file(path, "header must be t,x1..xd,y1..yd");
    const auto d = static_cast<Eigen::Index>((header.size() - 1) / 2);
    for (Eigen::Index l = 0; l < d; ++l) {
        const std::string xs = "x" + std::to_string(l + 1);
        const std::string ys = "y" + std::to_string(l + 1);
        if (header[static_cast<std::size_t>(1 + l)] != xs ||
            header[static_cast<std::size_t>(1 + d + l)] != ys)
            throw bad_file(path, "header must be t,x1..xd,y1..yd");
    }

    std::vector<SlicePath::Sample> samples;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto toks = split(line);
        if (toks.size() != header.size())
            throw bad_file(path, "row " + std::to_string(lineno) + " has wrong field count");
        SlicePath::Sample s;
        s.x.resize(d);
        s.y.resize(d);
        try {
            s.t = std::stod(toks[0]);
            for (Eigen::Index l = 0; l < d; ++l) {
                s.x[l] = std::stod(toks[static_cast<std::size_t>(1 + l)]);
                s.y[l] = std::stod(toks[static_cast<std::size_t>(1 + d + l)]);
            }
        } catch (...) {
            throw bad_file(path, "row " + std::to_string(lineno) + " has a malformed number");
        }
        samples.push_back(std::move(s));
    }
    try {
        return SlicePath::from_samples(d, std::move(samples));
    } catch (const std::invalid_argument& e) {
        throw bad_file(path, e.what());
    }
}

void save_path_csv(const std::string& path, const SlicePath& p) {
    std::ofstream out(path);
    if (!out) throw bad_file(path, "cannot open for writing");
    out << "t";
    for (Eigen::Index l = 1; l <= p.d(); ++l) out << ",x" << l;
    for (Eigen::Index l = 1; l <= p.d(); ++l) out << ",y" << l;
    out << "\n";
    char buf[32];
    auto emit = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
    };
    for (const auto& s : p.samples()) {
        emit(s.t);
        for (Eigen::Index l = 0; l < p.d(); ++l) {
            out << ",";
            emit(s.x[l]);
        }
        for (Eigen::Index l = 0; l < p.d(); ++l) {
            out << ",";
            emit(s.y[l]);
        }
        out << "\n";
    }
}

namespace {

Box box_from_json(const json& j, const std::string& path) {
    for (const char* key : {"x_lo", "x_hi", "y_lo", "y_hi"})
        if (!j.contains(key)) throw bad_file(path, std::string("box needs ") + key);
    Box b;
    b.x_lo = vec_from_json(j["x_lo"]);
    b.x_hi = vec_from_json(j["x_hi"]);
    b.y_lo = vec_from_json(j["y_lo"]);
    b.y_hi = vec_from_json(j["y_hi"]);
    if (b.x_lo.size() != b.x_hi.size() || b.y_lo.size() != b.y_hi.size() ||
        b.x_lo.size() != b.y_lo.size())
        throw bad_file(path, "box bound lengths differ");
    return b;
}

}  // namespace

DomainSpec load_domain_json(const std::string& path, const AlgebraPtr& algebra) {
    const json j = read_json(path);
    const std::string variant = j.value("variant", "");
    if (variant == "whole_cone") return DomainSpec::whole_cone();
    if (variant == "circularized") {
        std::vector<Box> boxes;
        for (const auto& b : j.value("boxes", json::array())) boxes.push_back(box_from_json(b, path));
        return DomainSpec::circularized(std::move(boxes));
    }
    if (variant == "slicewise") {
        std::vector<std::pair<Element, std::vector<Box>>> slices;
        for (const auto& s : j.value("slices", json::array())) {
            if (!s.contains("unit")) throw bad_file(path, "slicewise entry needs a unit");
            Element unit(algebra, vec_from_json(s["unit"]));
            std::vector<Box> boxes;
            for (const auto& b : s.value("boxes", json::array()))
                boxes.push_back(box_from_json(b, path));
            slices.emplace_back(std::move(unit), std::move(boxes));
        }
        return DomainSpec::slicewise(std::move(slices));
    }
    throw bad_file(path, "variant must be whole_cone, circularized or slicewise");
}

SlicePolynomial load_poly_json(const std::string& path, const AlgebraPtr& algebra) {
    const json j = read_json(path);
    if (!j.contains("d") || !j.contains("terms"))
        throw bad_file(path, "polynomial file needs d and terms");
    if (j.contains("algebra")) {
        const auto want = j["algebra"].get<std::string>();
        if (want != algebra->name())
            throw bad_file(path, "polynomial is for algebra '" + want + "', got '" +
                                     algebra->name() + "'");
    }
    SlicePolynomial p(j["d"].get<Eigen::Index>(), algebra);
    for (const auto& term : j["terms"]) {
        if (!term.contains("alpha") || !term.contains("coeff"))
            throw bad_file(path, "polynomial term needs alpha and coeff");
        std::vector<int> alpha;
        for (const auto& a : term["alpha"]) alpha.push_back(a.get<int>());
        try {
            p.add_term(std::move(alpha), Element(algebra, vec_from_json(term["coeff"])));
        } catch (const std::invalid_argument& e) {
            throw bad_file(path, e.what());
        }
    }
    return p;
}

void save_poly_json(const std::string& path, const SlicePolynomial& p) {
    json terms = json::array();
    for (const auto& [alpha, coeff] : p.terms()) {
        json t;
        t["alpha"] = alpha;
        t["coeff"] = vec_to_json(coeff.coeffs());
        terms.push_back(std::move(t));
    }
    write_json(path, json{{"d", p.d()},
                          {"algebra", p.algebra()->name()},
                          {"terms", std::move(terms)}});
}

}  // namespace slicekit

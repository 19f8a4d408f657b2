#include "walsh/io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "walsh/report.hpp"

namespace walsh {

std::string rat_to_string(const Rat& x) { return x.get_str(); }

Rat rat_from_string(const std::string& s) {
    Rat x;
    if (x.set_str(s, 10) != 0)
        throw ParameterError("malformed rational literal: " + s);
    x.canonicalize();
    return x;
}

namespace {

ordered_json grid_header(int M, const char* backend) {
    ordered_json j;
    j["resolution"] = M;
    j["backend"] = backend;
    return j;
}

void require_grid_fields(const ordered_json& j) {
    if (!j.is_object() || !j.contains("resolution") || !j.contains("values"))
        throw ParameterError("grid object must carry resolution and values");
}

std::string float_repr(double v) {
    std::array<char, 40> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

}  // namespace

ordered_json grid_to_json(const GridFn<Rat>& f) {
    ordered_json j = grid_header(f.resolution(), backend_traits<Rat>::name);
    ordered_json vals = ordered_json::array();
    for (const Rat& v : f.values()) vals.push_back(rat_to_string(v));
    j["values"] = std::move(vals);
    return j;
}

ordered_json grid_to_json(const GridFn<double>& f) {
    ordered_json j = grid_header(f.resolution(), backend_traits<double>::name);
    j["values"] = f.values();
    return j;
}

bool json_grid_is_exact(const ordered_json& j) {
    require_grid_fields(j);
    if (!j.contains("backend"))
        return j["values"].empty() || j["values"].front().is_string();
    return j["backend"].get<std::string>() == backend_traits<Rat>::name;
}

GridFn<Rat> grid_rat_from_json(const ordered_json& j) {
    require_grid_fields(j);
    int M = j["resolution"].get<int>();
    GridFn<Rat> f(M);
    const auto& vals = j["values"];
    if (vals.size() != f.size())
        throw ParameterError("value count does not match resolution");
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& v = vals[i];
        if (v.is_string())
            f[i] = rat_from_string(v.get<std::string>());
        else if (v.is_number_integer())
            f[i] = Rat(v.get<long>());
        else
            throw ParameterError("exact grid requires rational or integer values");
    }
    return f;
}

GridFn<double> grid_float_from_json(const ordered_json& j) {
    require_grid_fields(j);
    int M = j["resolution"].get<int>();
    GridFn<double> f(M);
    const auto& vals = j["values"];
    if (vals.size() != f.size())
        throw ParameterError("value count does not match resolution");
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& v = vals[i];
        if (v.is_string())
            f[i] = rat_from_string(v.get<std::string>()).get_d();
        else
            f[i] = v.get<double>();
    }
    return f;
}

GridFn<double> to_float(const GridFn<Rat>& f) {
    GridFn<double> g(f.resolution());
    for (std::size_t i = 0; i < f.size(); ++i) g[i] = f[i].get_d();
    return g;
}

namespace {

template <typename T>
ordered_json coeffs_header(const CoeffVector<T>& c, const char* backend) {
    ordered_json j;
    j["resolution"] = c.M;
    j["ordering"] = to_string(c.ordering);
    j["backend"] = backend;
    return j;
}

}  // namespace

ordered_json coeffs_to_json(const CoeffVector<Rat>& c) {
    ordered_json j = coeffs_header(c, backend_traits<Rat>::name);
    ordered_json vals = ordered_json::array();
    for (const Rat& v : c.coeffs) vals.push_back(rat_to_string(v));
    j["values"] = std::move(vals);
    return j;
}

ordered_json coeffs_to_json(const CoeffVector<double>& c) {
    ordered_json j = coeffs_header(c, backend_traits<double>::name);
    j["values"] = c.coeffs;
    return j;
}

std::string grid_to_csv(const GridFn<Rat>& f) {
    std::ostringstream out;
    out << "# lossy decimal rendering of exact rational values (shortest round-trip double)\n";
    out << "cell,value\n";
    for (std::size_t u = 0; u < f.size(); ++u)
        out << u << ',' << float_repr(f[u].get_d()) << '\n';
    return out.str();
}

std::string grid_to_csv(const GridFn<double>& f) {
    std::ostringstream out;
    out << "# float64 values, shortest round-trip rendering\n";
    out << "cell,value\n";
    for (std::size_t u = 0; u < f.size(); ++u)
        out << u << ',' << float_repr(f[u]) << '\n';
    return out.str();
}

std::string to_string(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::informative: return "informative";
    }
    return "?";
}

ordered_json ExperimentReport::to_json() const {
    // canonical: a pure function of the configuration (no timings)
    ordered_json j;
    j["experiment"] = experiment;
    j["status"] = walsh::to_string(status);
    j["params"] = params;
    j["constants"] = constants;
    j["witnesses"] = witnesses;
    return j;
}

std::string ExperimentReport::summary() const {
    std::array<char, 32> t{};
    std::snprintf(t.data(), t.size(), "%.2f", wall_seconds);
    std::string line = "[" + experiment + "] " + walsh::to_string(status) +
                       " (wall " + t.data() + "s)";
    return line;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace walsh

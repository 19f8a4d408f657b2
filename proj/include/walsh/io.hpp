#pragma once

#include <string>

#include <json.hpp>

#include "walsh/core.hpp"
#include "walsh/transform.hpp"

/// JSON (canonical) and CSV (lossy convenience) serialization of grids and
/// coefficient vectors.  Rationals travel as "p/q" strings; the CSV view
/// renders every value in decimal and flags its precision.
namespace walsh {

using ordered_json = nlohmann::ordered_json;

std::string rat_to_string(const Rat& x);
Rat rat_from_string(const std::string& s);

ordered_json grid_to_json(const GridFn<Rat>& f);
ordered_json grid_to_json(const GridFn<double>& f);

/// Backend recorded in a serialized grid object.
bool json_grid_is_exact(const ordered_json& j);

GridFn<Rat> grid_rat_from_json(const ordered_json& j);
GridFn<double> grid_float_from_json(const ordered_json& j);

GridFn<double> to_float(const GridFn<Rat>& f);

ordered_json coeffs_to_json(const CoeffVector<Rat>& c);
ordered_json coeffs_to_json(const CoeffVector<double>& c);

/// CSV with columns cell,value; prefixed by a comment line flagging the
/// decimal precision (the CSV view is lossy for rationals).
std::string grid_to_csv(const GridFn<Rat>& f);
std::string grid_to_csv(const GridFn<double>& f);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace walsh

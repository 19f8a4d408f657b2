#pragma once

#include <string>

#include <json.hpp>

namespace walsh {

enum class Status { pass, fail, informative };

std::string to_string(Status s);

/// Outcome of one verification experiment.  The canonical JSON form is a
/// pure function of the experiment configuration: wall time is kept out of
/// it and only appears in the human-readable summary line.
struct ExperimentReport {
    std::string experiment;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    nlohmann::ordered_json witnesses = nlohmann::ordered_json::array();
    nlohmann::ordered_json constants = nlohmann::ordered_json::object();
    Status status = Status::pass;
    double wall_seconds = 0.0;

    nlohmann::ordered_json to_json() const;
    std::string summary() const;

    bool ok() const { return status != Status::fail; }
};

}  // namespace walsh

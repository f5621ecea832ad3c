#include "report.hpp"

namespace lostool {

Json RunReport::to_json() const {
    Json j = Json::object();
    j["command"] = command;
    j["parameters"] = parameters;
    j["verdict"] = verdict;
    j["payload"] = payload;
    j["elapsed_ms"] = elapsed_ms;
    return j;
}

}  // namespace lostool

// Test double for the external-SUT wire protocol. Reads one JSON request per
// line on stdin, writes one JSON response per line on stdout. The first
// argument selects a behaviour:
//
//   sum        answer with the sum of the input list (default)
//   error-neg  answer {"error": "negative input"} when any element is < 0
//   malformed7 emit a non-JSON line for every request whose id % 7 == 6
//   slow       sleep 500 ms before every response (for timeout tests)
//   mismatch   answer with id + 1000000 (never matches the request)

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

int main(int argc, char** argv) {
  const std::string mode = argc > 1 ? argv[1] : "sum";
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.empty()) continue;
    const nlohmann::json req = nlohmann::json::parse(line, nullptr, false);
    if (req.is_discarded() || !req.contains("id") || !req.contains("input")) {
      std::cout << "{\"error\":\"bad request\"}" << std::endl;
      continue;
    }
    const std::uint64_t id = req.at("id").get<std::uint64_t>();
    const std::vector<double> input = req.at("input").get<std::vector<double>>();

    if (mode == "slow")
      std::this_thread::sleep_for(std::chrono::milliseconds(500));

    if (mode == "malformed7" && id % 7 == 6) {
      std::cout << "this is not json" << std::endl;
      continue;
    }

    nlohmann::json resp;
    resp["id"] = mode == "mismatch" ? id + 1000000 : id;
    bool negative = false;
    for (double v : input) negative = negative || v < 0;
    if (mode == "error-neg" && negative) {
      resp["error"] = "negative input";
    } else {
      double sum = 0;
      for (double v : input) sum += v;
      resp["output"] = sum;
    }
    std::cout << resp.dump() << std::endl;
  }
  return 0;
}

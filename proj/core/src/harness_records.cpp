// Copyright 2026 The vqebench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "vqebench/harness.hpp"

namespace vqeb {

using nlohmann::json;

std::string RunRecord::cell_name() const {
  std::ostringstream os;
  os << to_string(problem_class) << "_q" << num_qubits << '_' << form.on(num_qubits).label() << '_'
     << to_string(algorithm) << "_s" << seed;
  return os.str();
}

void write_record(std::ostream& os, const RunRecord& r) {
  json optimal = json::array();
  for (auto z : r.optimal_set) optimal.push_back(bitstring(z, r.num_qubits));
  const json meta{{"class", to_string(r.problem_class)},
                  {"qubits", r.num_qubits},
                  {"seed", r.seed},
                  {"layers", r.form.layers},
                  {"entangler", to_string(r.form.entangler)},
                  {"form", r.form.on(r.num_qubits).label()},
                  {"optimizer", to_string(r.algorithm)},
                  {"num_params", r.num_params},
                  {"budget", r.budget},
                  {"initial_value", r.initial_value},
                  {"optimum", r.optimum},
                  {"optimal_set", std::move(optimal)},
                  {"evaluations", r.energies.size()},
                  {"status", r.status},
                  {"lucky_start_policy", "converged_at_0"}};
  os << meta.dump() << '\n';
  for (std::size_t k = 0; k < r.energies.size(); ++k) {
    json line{{"k", k + 1}, {"energy", r.energies[k]}, {"prob", r.prob_optimal.at(k)}};
    if (!r.thetas.empty()) line["theta"] = r.thetas.at(k);
    os << line.dump() << '\n';
  }
}

RunRecord read_record(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("record file is empty");
  const json meta = json::parse(line);
  RunRecord r;
  r.problem_class = parse_problem_class(meta.at("class").get<std::string>());
  r.num_qubits = meta.at("qubits").get<int>();
  r.seed = meta.at("seed").get<std::uint64_t>();
  r.form.layers = meta.at("layers").get<int>();
  r.form.entangler = parse_entangler(meta.at("entangler").get<std::string>());
  r.algorithm = parse_algorithm(meta.at("optimizer").get<std::string>());
  r.num_params = meta.at("num_params").get<std::size_t>();
  r.budget = meta.at("budget").get<std::size_t>();
  r.initial_value = meta.at("initial_value").get<double>();
  r.optimum = meta.at("optimum").get<double>();
  for (const auto& s : meta.at("optimal_set")) r.optimal_set.push_back(parse_bitstring(s.get<std::string>()));
  r.status = meta.value("status", "");
  const auto expected = meta.at("evaluations").get<std::size_t>();

  r.energies.reserve(expected);
  r.prob_optimal.reserve(expected);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const json e = json::parse(line);
    if (e.at("k").get<std::size_t>() != r.energies.size() + 1) {
      throw std::runtime_error("record evaluation lines are out of order");
    }
    r.energies.push_back(e.at("energy").get<double>());
    r.prob_optimal.push_back(e.at("prob").get<double>());
    if (e.contains("theta")) r.thetas.push_back(e.at("theta").get<std::vector<double>>());
  }
  if (r.energies.size() != expected) throw std::runtime_error("record is truncated");
  if (!r.thetas.empty() && r.thetas.size() != r.energies.size()) {
    throw std::runtime_error("record stores theta for only some evaluations");
  }
  return r;
}

void save_record_atomic(const std::filesystem::path& path, const RunRecord& r) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    write_record(out, r);
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  // rename() replaces the target in one step on POSIX filesystems.
  std::filesystem::rename(tmp, path);
}

RunRecord load_record(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open record " + path.string());
  return read_record(in);
}

std::vector<RunRecord> load_records(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw std::runtime_error(dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file() || e.path().extension() != ".jsonl") continue;
    if (e.path().filename() == "errors.jsonl") continue;
    files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<RunRecord> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(load_record(f));
  return out;
}

}  // namespace vqeb

#include "slicesim/report.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace slicesim {

namespace {

using ojson = nlohmann::ordered_json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace

std::string report_to_json(const SimReport& r) {
  ojson j;
  j["scenario"] = r.scenario_name;
  j["algo"] = r.algo;
  j["seed"] = r.seed;
  j["duration_s"] = r.duration_s;
  j["warmup_s"] = r.warmup_s;
  j["sample_period_s"] = r.sample_period_s;
  j["n"] = r.n;
  j["r"] = r.r;
  j["total_completed"] = r.total_completed;
  j["saturation_events"] = r.saturation_events;
  j["total_generated"] = r.total_generated;
  j["total_serviced"] = r.total_serviced;
  j["departures"] = r.departures;
  j["mean_queuing_delay_s"] = r.mean_queuing_delay_s;
  j["has_steady"] = r.has_steady;
  j["steady_mean_load"] = r.steady_mean_load;
  j["steady_std_load"] = r.steady_std_load;
  j["response_by_task"] = ojson::array();
  for (const auto& tr : r.response_by_task) {
    j["response_by_task"].push_back({{"task_id", tr.task_id},
                                     {"name", tr.name},
                                     {"count", tr.count},
                                     {"mean_e2e_s", tr.mean_e2e_s}});
  }
  j["samples"] = ojson::array();
  for (const auto& s : r.samples) {
    ojson js;
    js["t"] = s.t;
    js["upf_load"] = s.upf_load;
    js["has_inuse"] = s.has_inuse;
    if (s.has_inuse) {
      js["mean_inuse"] = s.mean_inuse;
      js["std_inuse"] = s.std_inuse;
    }
    js["completed"] = s.completed;
    js["violations"] = s.violations;
    js["generated"] = s.generated;
    js["serviced"] = s.serviced;
    js["outstanding"] = s.outstanding;
    js["slice_counts"] = ojson::array();
    for (const auto& c : s.slice_counts) {
      js["slice_counts"].push_back({{"active", c[0]}, {"idle", c[1]}, {"elevated", c[2]}});
    }
    j["samples"].push_back(std::move(js));
  }
  return j.dump(2) + "\n";
}

SimReport report_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SimReport r;
  r.scenario_name = j.at("scenario").get<std::string>();
  r.algo = j.at("algo").get<std::string>();
  r.seed = j.at("seed").get<uint64_t>();
  r.duration_s = j.at("duration_s").get<double>();
  r.warmup_s = j.at("warmup_s").get<double>();
  r.sample_period_s = j.at("sample_period_s").get<double>();
  r.n = j.at("n").get<int>();
  r.r = j.at("r").get<int>();
  r.total_completed = j.at("total_completed").get<long>();
  r.saturation_events = j.at("saturation_events").get<long>();
  r.total_generated = j.at("total_generated").get<long>();
  r.total_serviced = j.at("total_serviced").get<long>();
  r.departures = j.at("departures").get<long>();
  r.mean_queuing_delay_s = j.at("mean_queuing_delay_s").get<double>();
  r.has_steady = j.at("has_steady").get<bool>();
  r.steady_mean_load = j.at("steady_mean_load").get<double>();
  r.steady_std_load = j.at("steady_std_load").get<double>();
  for (const auto& tr : j.at("response_by_task")) {
    r.response_by_task.push_back({tr.at("task_id").get<int>(),
                                  tr.at("name").get<std::string>(),
                                  tr.at("count").get<long>(),
                                  tr.at("mean_e2e_s").get<double>()});
  }
  for (const auto& js : j.at("samples")) {
    MetricsSample s;
    s.t = js.at("t").get<double>();
    s.upf_load = js.at("upf_load").get<std::vector<double>>();
    s.has_inuse = js.at("has_inuse").get<bool>();
    if (s.has_inuse) {
      s.mean_inuse = js.at("mean_inuse").get<double>();
      s.std_inuse = js.at("std_inuse").get<double>();
    }
    s.completed = js.at("completed").get<long>();
    s.violations = js.at("violations").get<int>();
    s.generated = js.at("generated").get<long>();
    s.serviced = js.at("serviced").get<long>();
    s.outstanding = js.at("outstanding").get<long>();
    for (const auto& c : js.at("slice_counts")) {
      s.slice_counts.push_back({c.at("active").get<int>(), c.at("idle").get<int>(),
                                c.at("elevated").get<int>()});
    }
    r.samples.push_back(std::move(s));
  }
  return r;
}

std::string report_to_csv(const SimReport& r) {
  std::ostringstream out;
  out << "t,algo,upf_id,theta,mean,std,completed\n";
  for (const auto& s : r.samples) {
    for (int j = 1; j <= r.r; ++j) {
      out << num(s.t) << ',' << r.algo << ',' << j << ',' << num(s.upf_load[j - 1]) << ',';
      if (s.has_inuse) {
        out << num(s.mean_inuse) << ',' << num(s.std_inuse);
      } else {
        out << ',';
      }
      out << ',' << s.completed << '\n';
    }
  }
  return out.str();
}

ComparisonSummary compare(const ScenarioConfig& config,
                          const std::vector<std::string>& algos,
                          const std::vector<uint64_t>& seeds) {
  if (algos.empty() || seeds.empty()) {
    throw std::invalid_argument("compare needs at least one algo and one seed");
  }
  ComparisonSummary summary;
  summary.scenario_name = config.name;
  summary.seeds = seeds;

  const int total = static_cast<int>(algos.size() * seeds.size());
  summary.runs.resize(total);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int idx = 0; idx < total; ++idx) {
    const size_t a = idx / seeds.size();
    const size_t s = idx % seeds.size();
    ScenarioConfig cfg = config;
    cfg.seed = seeds[s];
    summary.runs[idx] = run(cfg, algos[a]);
  }

  for (size_t a = 0; a < algos.size(); ++a) {
    AlgoSummary as;
    as.algo = algos[a];
    std::vector<double> completions;
    std::vector<double> means;
    std::vector<double> stds;
    std::map<int, std::vector<double>> resp;
    for (size_t s = 0; s < seeds.size(); ++s) {
      const SimReport& r = summary.runs[a * seeds.size() + s];
      completions.push_back(static_cast<double>(r.total_completed));
      if (r.has_steady) {
        means.push_back(r.steady_mean_load);
        stds.push_back(r.steady_std_load);
      }
      for (const auto& tr : r.response_by_task) resp[tr.task_id].push_back(tr.mean_e2e_s);
    }
    as.median_completions = median(completions);
    as.median_steady_mean_load = median(means);
    as.median_steady_std_load = median(stds);
    for (auto& [task, v] : resp) as.median_response_by_task[task] = median(v);
    summary.algos.push_back(std::move(as));
  }

  for (const auto& a : summary.algos) {
    for (const auto& b : summary.algos) {
      if (a.algo == b.algo || b.median_completions == 0.0) continue;
      summary.completion_ratios[a.algo + "/" + b.algo] =
          a.median_completions / b.median_completions - 1.0;
    }
  }
  return summary;
}

std::string summary_to_json(const ComparisonSummary& s) {
  ojson j;
  j["scenario"] = s.scenario_name;
  j["seeds"] = s.seeds;
  j["algos"] = ojson::array();
  for (const auto& a : s.algos) {
    ojson ja;
    ja["algo"] = a.algo;
    ja["median_completions"] = a.median_completions;
    ja["median_steady_mean_load"] = a.median_steady_mean_load;
    ja["median_steady_std_load"] = a.median_steady_std_load;
    ja["median_response_by_task"] = ojson::object();
    for (const auto& [task, v] : a.median_response_by_task) {
      ja["median_response_by_task"][std::to_string(task)] = v;
    }
    j["algos"].push_back(std::move(ja));
  }
  j["completion_ratios"] = ojson::object();
  for (const auto& [k, v] : s.completion_ratios) j["completion_ratios"][k] = v;
  return j.dump(2) + "\n";
}

std::string summary_to_text(const ComparisonSummary& s) {
  std::ostringstream out;
  out << "scenario: " << s.scenario_name << "  seeds: " << s.seeds.size() << "\n";
  out << "algo      completions  steady_mean  steady_std\n";
  for (const auto& a : s.algos) {
    char line[128];
    std::snprintf(line, sizeof(line), "%-9s %11.1f %12.4f %11.4f\n", a.algo.c_str(),
                  a.median_completions, a.median_steady_mean_load,
                  a.median_steady_std_load);
    out << line;
  }
  for (const auto& [k, v] : s.completion_ratios) {
    char line[64];
    std::snprintf(line, sizeof(line), "%-12s %+7.1f%%\n", k.c_str(), 100.0 * v);
    out << line;
  }
  return out.str();
}

void emit_plot_data(const std::vector<SimReport>& reports, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory " + out_dir + ": " + ec.message());

  std::ostringstream load;
  load << "t,algo,seed,upf_id,theta,mean_inuse,std_inuse\n";
  std::ostringstream resp;
  resp << "algo,seed,task_id,task_name,mean_response_s,count\n";
  std::ostringstream comp;
  comp << "t,algo,seed,completed\n";

  for (const auto& r : reports) {
    for (const auto& s : r.samples) {
      for (int j = 1; j <= r.r; ++j) {
        load << num(s.t) << ',' << r.algo << ',' << r.seed << ',' << j << ','
             << num(s.upf_load[j - 1]) << ',';
        if (s.has_inuse) {
          load << num(s.mean_inuse) << ',' << num(s.std_inuse);
        } else {
          load << ',';
        }
        load << '\n';
      }
      comp << num(s.t) << ',' << r.algo << ',' << r.seed << ',' << s.completed << '\n';
    }
    for (const auto& tr : r.response_by_task) {
      resp << r.algo << ',' << r.seed << ',' << tr.task_id << ',' << tr.name << ','
           << num(tr.mean_e2e_s) << ',' << tr.count << '\n';
    }
  }

  write_file(out_dir + "/load_timeseries.csv", load.str());
  write_file(out_dir + "/response_time_by_subtask.csv", resp.str());
  write_file(out_dir + "/completions_timeseries.csv", comp.str());
}

}  // namespace slicesim

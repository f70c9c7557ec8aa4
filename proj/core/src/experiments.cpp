#include "fairrank/experiments.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "fairrank/generators.hpp"

namespace fairrank {

RunFile::RunFile(std::vector<RunRecord> records) : records_(std::move(records)) {
  for (std::size_t i = 0; i < records_.size(); ++i) {
    by_query_[records_[i].query_id].push_back(i);
  }
}

std::vector<std::string> RunFile::query_ids() const {
  std::vector<std::string> ids;
  ids.reserve(by_query_.size());
  for (const auto& [q, _] : by_query_) ids.push_back(q);
  return ids;
}

bool RunFile::has_query(const std::string& query_id) const {
  return by_query_.count(query_id) > 0;
}

PopulationPtr RunFile::population_for(const std::string& query_id, double a, double c) const {
  auto it = by_query_.find(query_id);
  if (it == by_query_.end()) {
    throw ValidationError(0, "unknown query id: " + query_id);
  }
  std::vector<Candidate> cands;
  cands.reserve(it->second.size());
  for (std::size_t i : it->second) {
    const RunRecord& rec = records_[i];
    cands.push_back({rec.candidate_id, rec.group, a * rec.relevance + c});
  }
  return std::make_shared<const Population>(std::move(cands));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(field);
      field.clear();
    } else if (ch != '\r') {
      field += ch;
    }
  }
  fields.push_back(field);
  return fields;
}

}  // namespace

RunFile parse_run_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "empty run file");
  ++line_no;
  if (split_csv_line(line) !=
      std::vector<std::string>{"query_id", "candidate_id", "group", "relevance"}) {
    throw ParseError(1, "expected header query_id,candidate_id,group,relevance");
  }
  std::vector<RunRecord> records;
  std::map<std::pair<std::string, std::string>, std::size_t> seen;
  std::map<std::string, std::array<std::size_t, 2>> group_counts;
  std::map<std::string, std::size_t> first_line_of_query;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 4) throw ParseError(line_no, "expected 4 fields");
    RunRecord rec;
    rec.query_id = f[0];
    rec.candidate_id = f[1];
    if (rec.query_id.empty() || rec.candidate_id.empty()) {
      throw ValidationError(line_no, "empty query or candidate id");
    }
    if (f[2] == "0") {
      rec.group = Group::NonProtected;
    } else if (f[2] == "1") {
      rec.group = Group::Protected;
    } else {
      throw ValidationError(line_no, "group must be 0 or 1, got '" + f[2] + "'");
    }
    const char* begin = f[3].data();
    const char* end = begin + f[3].size();
    auto [ptr, ec] = std::from_chars(begin, end, rec.relevance);
    if (ec != std::errc{} || ptr != end) {
      throw ParseError(line_no, "bad relevance value '" + f[3] + "'");
    }
    if (!std::isfinite(rec.relevance)) {
      throw ValidationError(line_no, "relevance must be finite");
    }
    auto key = std::make_pair(rec.query_id, rec.candidate_id);
    if (!seen.emplace(key, line_no).second) {
      throw ValidationError(line_no, "duplicate (query_id, candidate_id) pair " + rec.query_id +
                                         "," + rec.candidate_id);
    }
    first_line_of_query.emplace(rec.query_id, line_no);
    ++group_counts[rec.query_id][rec.group == Group::Protected ? 1 : 0];
    records.push_back(std::move(rec));
  }
  for (const auto& [q, counts] : group_counts) {
    if (counts[0] == 0 || counts[1] == 0) {
      throw ValidationError(first_line_of_query[q],
                            "query " + q + " must contain candidates of both groups");
    }
  }
  return RunFile(std::move(records));
}

RunFile load_run_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open run file: " + path);
  return parse_run_csv(in);
}

Ranking relevance_ranking(const PopulationPtr& pop) {
  std::vector<std::size_t> order(pop->size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const Candidate& a = pop->candidate(x);
    const Candidate& b = pop->candidate(y);
    if (a.relevance != b.relevance) return a.relevance > b.relevance;
    return a.id < b.id;
  });
  return Ranking(CandidateSet::full(pop), std::move(order));
}

SweepConfig SweepConfig::defaults() {
  SweepConfig cfg;
  for (std::size_t n = 20; n <= 500; n += 10) cfg.length_grid.push_back(n);
  for (int i = 0; i <= 40; ++i) {
    cfg.proportion_grid.push_back(static_cast<double>(10 + 2 * i) / 100.0);
  }
  for (std::size_t N = 1; N <= 64; ++N) cfg.closeness_grid.push_back(N);
  cfg.translate_grid = {-0.09, -0.05, 0.0, 0.1, 0.5, 1.0, 2.0, 5.0};
  cfg.rescale_grid = {0.5, 1.0, 2.0, 10.0};
  return cfg;
}

namespace {

std::optional<double> try_evaluate(const MetricEvaluator& eval, MetricName m,
                                   const Population& pop, const Ranking& r) {
  try {
    return eval.evaluate(m, pop, r);
  } catch (const UndefinedMetricError&) {
    return std::nullopt;
  } catch (const NormalizerZeroError&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<ExperimentRow> run_length_sweep(const SweepConfig& cfg) {
  std::vector<ExperimentRow> rows;
  MetricEvaluator eval(cfg.metric_config);
  for (std::size_t n : cfg.length_grid) {
    PopulationPtr pop = make_population_ptr({n, cfg.length_share, RelevanceMode::Uniform, {}});
    const CandidateSet everyone = CandidateSet::full(pop);
    const Ranking first = make_first(everyone);
    const Ranking last = make_last(everyone);
    for (MetricName m : kAllMetrics) {
      for (const auto& [kind, ranking] :
           {std::make_pair("first", &first), std::make_pair("last", &last)}) {
        ExperimentRow row;
        row.experiment = "length";
        row.metric = to_string(m);
        row.n = n;
        row.p = cfg.length_share;
        row.ranking_kind = kind;
        row.value = try_evaluate(eval, m, *pop, *ranking);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::vector<ExperimentRow> run_proportion_sweep(const SweepConfig& cfg) {
  std::vector<ExperimentRow> rows;
  MetricEvaluator eval(cfg.metric_config);
  for (double p : cfg.proportion_grid) {
    PopulationPtr pop =
        make_population_ptr({cfg.proportion_length, p, RelevanceMode::Uniform, {}});
    const CandidateSet everyone = CandidateSet::full(pop);
    const Ranking first = make_first(everyone);
    const Ranking last = make_last(everyone);
    for (MetricName m : kAllMetrics) {
      for (const auto& [kind, ranking] :
           {std::make_pair("first", &first), std::make_pair("last", &last)}) {
        ExperimentRow row;
        row.experiment = "proportion";
        row.metric = to_string(m);
        row.n = cfg.proportion_length;
        row.p = p;
        row.ranking_kind = kind;
        row.value = try_evaluate(eval, m, *pop, *ranking);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::vector<ExperimentRow> run_closeness_sweep(const SweepConfig& cfg) {
  std::vector<ExperimentRow> rows;
  // The candidate sets here start at n = 2N = 2, so the step cutoffs of the
  // long-grid sweeps cannot apply; every rank is a cutoff instead.
  MetricConfig mc = cfg.metric_config;
  mc.cutoffs = Cutoffs::every_rank();
  MetricEvaluator eval(mc);
  for (std::size_t N : cfg.closeness_grid) {
    for (MetricName m : kAllMetrics) {
      const double share =
          m == MetricName::AWRF ? cfg.closeness_awrf_share : cfg.closeness_share;
      std::size_t size = 10;
      while (true) {
        const auto prot =
            static_cast<std::size_t>(std::llround(share * static_cast<double>(size)));
        if (prot >= std::max<std::size_t>(N, 1) && size - prot >= 2 * N - 1) break;
        size += 10;
      }
      PopulationPtr pop = make_population_ptr({size, share, RelevanceMode::Uniform, {}});
      DnPair pair = make_dn_pair(pop, N);
      const Ranking first = make_first(pair.lone_protected);
      const Ranking last = make_last(pair.half_protected);
      for (const auto& [kind, ranking] :
           {std::make_pair("first", &first), std::make_pair("last", &last)}) {
        ExperimentRow row;
        row.experiment = "closeness";
        row.metric = to_string(m);
        row.n = 2 * N;
        row.p = share;
        row.N = N;
        row.ranking_kind = kind;
        row.value = try_evaluate(eval, m, *pop, *ranking);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

namespace {

std::vector<ExperimentRow> run_transform_sweep(const RunFile& run,
                                               const std::vector<std::string>& queries,
                                               const SweepConfig& cfg, bool translate) {
  static constexpr MetricName kRelevanceMetrics[] = {MetricName::DTD, MetricName::DTR,
                                                     MetricName::DID, MetricName::DIR};
  std::vector<ExperimentRow> rows;
  MetricConfig mc = cfg.metric_config;
  mc.cutoffs = Cutoffs::every_rank();
  MetricEvaluator eval(mc);
  std::vector<std::string> query_list = queries;
  if (query_list.empty()) query_list = run.query_ids();
  std::sort(query_list.begin(), query_list.end());
  for (const std::string& q : query_list) {
    for (double t : translate ? cfg.translate_grid : cfg.rescale_grid) {
      const double a = translate ? 1.0 : t;
      const double c = translate ? t : 0.0;
      PopulationPtr pop = run.population_for(q, a, c);
      const Ranking ranking = relevance_ranking(pop);
      for (MetricName m : kRelevanceMetrics) {
        ExperimentRow row;
        row.experiment = translate ? "translation" : "rescaling";
        row.metric = to_string(m);
        if (translate) {
          row.c = c;
        } else {
          row.a = a;
        }
        row.query = q;
        row.value = try_evaluate(eval, m, *pop, ranking);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace

std::vector<ExperimentRow> run_translation_sweep(const RunFile& run,
                                                 const std::vector<std::string>& queries,
                                                 const SweepConfig& cfg) {
  return run_transform_sweep(run, queries, cfg, true);
}

std::vector<ExperimentRow> run_rescaling_sweep(const RunFile& run,
                                               const std::vector<std::string>& queries,
                                               const SweepConfig& cfg) {
  return run_transform_sweep(run, queries, cfg, false);
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
  out << "experiment,metric,n,p,N,a,c,ranking_kind,query,value\n";
  for (const ExperimentRow& row : rows) {
    out << row.experiment << ',' << row.metric << ',';
    if (row.n) out << *row.n;
    out << ',';
    if (row.p) out << format_double(*row.p);
    out << ',';
    if (row.N) out << *row.N;
    out << ',';
    if (row.a) out << format_double(*row.a);
    out << ',';
    if (row.c) out << format_double(*row.c);
    out << ',' << row.ranking_kind << ',' << row.query << ',';
    out << (row.value ? format_double(*row.value) : "undefined");
    out << '\n';
  }
}

}  // namespace fairrank

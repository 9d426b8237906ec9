#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "lacs/bench.hpp"

namespace lacs {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", value);
  return buf;
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) return table;
  table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != table.header.size()) {
      throw Error(ErrorCode::IoError, "row has " + std::to_string(fields.size()) + " fields, header has " +
                                          std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

void write_case_csv(std::ostream& out, const std::vector<CaseResult>& results) {
  out << "case_id,eta,trial,round,gamma,c_estimate,rsnr_db\n";
  for (const auto& res : results) {
    for (const auto& trial : res.per_trial) {
      for (const auto& tr : trial.trace) {
        out << res.case_id << ',' << format_double(res.eta) << ',' << trial.trial << ',' << tr.round << ','
            << format_double(tr.gamma) << ',' << format_double(tr.c_estimate) << ',' << format_double(tr.rsnr_db)
            << '\n';
      }
    }
  }
}

void write_trace_csv(std::ostream& out, const CaseResult& result) {
  out << "trial,round,lines_acquired,gamma,rsnr_db,objective,c_estimate\n";
  for (const auto& trial : result.per_trial) {
    for (const auto& tr : trial.trace) {
      out << trial.trial << ',' << tr.round << ',' << tr.lines_acquired << ',' << format_double(tr.gamma) << ','
          << format_double(tr.rsnr_db) << ',' << format_double(tr.objective) << ','
          << format_double(tr.c_estimate) << '\n';
    }
  }
}

void write_eta_csv(std::ostream& out, const std::vector<CaseResult>& results) {
  out << "case_id,eta,trials,mean_rsnr_db,std_rsnr_db\n";
  for (const auto& r : results) {
    out << r.case_id << ',' << format_double(r.eta) << ',' << r.trials << ',' << format_double(r.mean_rsnr_db) << ','
        << format_double(r.std_rsnr_db) << '\n';
  }
}

void write_pc_csv(std::ostream& out, const std::vector<PcPoint>& points) {
  out << "p,C,trials,mean_rsnr_db,std_rsnr_db\n";
  for (const auto& pt : points) {
    out << format_double(pt.p) << ',' << format_double(pt.C) << ',' << pt.trials << ','
        << format_double(pt.mean_rsnr_db) << ',' << format_double(pt.std_rsnr_db) << '\n';
  }
}

void write_grayscale_csv(std::ostream& out, const std::vector<GrayscalePoint>& points) {
  out << "c,eta,trials,sc_mean_rsnr_db,sc_std_rsnr_db,nsc_mean_rsnr_db,nsc_std_rsnr_db\n";
  for (const auto& pt : points) {
    out << format_double(pt.c) << ',' << format_double(pt.eta) << ',' << pt.trials << ','
        << format_double(pt.sc_mean) << ',' << format_double(pt.sc_std) << ',' << format_double(pt.nsc_mean) << ','
        << format_double(pt.nsc_std) << '\n';
  }
}

}  // namespace lacs

#include <sstream>
#include <stdexcept>

#include "basins/csv.hpp"
#include "basins/json_io.hpp"
#include "basins/labeling.hpp"

namespace basins {

namespace {

constexpr std::string_view kHeader = "x0,y0,z0,label,settle_time";

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw std::runtime_error("dataset line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string dataset_to_csv(std::span<const LabeledSample> samples) {
  std::ostringstream os;
  os << kHeader << '\n';
  for (const auto& s : samples) {
    os << csv::format_double(s.ic.x) << ',' << csv::format_double(s.ic.y) << ','
       << csv::format_double(s.ic.z) << ',' << encode(s.label) << ','
       << csv::format_double(s.settle_time) << '\n';
  }
  return os.str();
}

void write_dataset_csv(const std::string& path, std::span<const LabeledSample> samples) {
  csv::write_file(path, dataset_to_csv(samples));
}

std::vector<LabeledSample> parse_dataset_csv(const std::string& text) {
  std::vector<LabeledSample> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header_seen) {
      if (line != kHeader) parse_error(line_no, "expected header '" + std::string(kHeader) + "'");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto fields = csv::split(line);
    if (fields.size() != 5) {
      parse_error(line_no, "expected 5 fields, found " + std::to_string(fields.size()));
    }
    LabeledSample s;
    if (!csv::parse_double(fields[0], s.ic.x) || !csv::parse_double(fields[1], s.ic.y) ||
        !csv::parse_double(fields[2], s.ic.z)) {
      parse_error(line_no, "malformed coordinate");
    }
    if (!is_finite(s.ic)) parse_error(line_no, "non-finite coordinate");
    long label = 0;
    if (!csv::parse_int(fields[3], label) || (label != 0 && label != 1)) {
      parse_error(line_no, "label must be 0 or 1");
    }
    s.label = label == 1 ? AttractorLabel::CPlus : AttractorLabel::CMinus;
    if (!csv::parse_double(fields[4], s.settle_time)) parse_error(line_no, "malformed settle_time");
    out.push_back(s);
  }
  if (!header_seen) parse_error(1, "empty file");
  return out;
}

std::vector<LabeledSample> read_dataset_csv(const std::string& path) {
  return parse_dataset_csv(csv::read_file(path));
}

std::string metadata_to_json(const DatasetMetadata& meta) {
  nlohmann::json j = {{"format_version", kDatasetFormatVersion},
                      {"params", meta.params},
                      {"domain", meta.domain},
                      {"integrator", meta.integrator},
                      {"seed", meta.seed},
                      {"requested", meta.requested},
                      {"failures", meta.failures},
                      {"undecided_fraction", meta.undecided_fraction}};
  return j.dump(2) + "\n";
}

DatasetMetadata metadata_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.value("format_version", std::string{}) != kDatasetFormatVersion) {
    throw std::runtime_error("unsupported dataset metadata format version");
  }
  DatasetMetadata meta;
  j.at("params").get_to(meta.params);
  j.at("domain").get_to(meta.domain);
  j.at("integrator").get_to(meta.integrator);
  j.at("seed").get_to(meta.seed);
  j.at("requested").get_to(meta.requested);
  j.at("failures").get_to(meta.failures);
  j.at("undecided_fraction").get_to(meta.undecided_fraction);
  return meta;
}

}  // namespace basins

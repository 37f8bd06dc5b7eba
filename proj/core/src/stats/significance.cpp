#include "newsaudit/stats/significance.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "newsaudit/detail/format.hpp"
#include "newsaudit/errors.hpp"

namespace newsaudit::stats {

namespace {

std::string pair_label(const std::pair<Subgroup, Subgroup>& pair) {
  return to_string(pair.first) + "-" + to_string(pair.second);
}

std::pair<Subgroup, Subgroup> pair_from_label(const std::string& label,
                                              std::size_t line) {
  auto dash = label.find('-');
  if (dash == std::string::npos)
    throw ParseError("bad group_pair '" + label + "'", line);
  return {subgroup_from_string(label.substr(0, dash)),
          subgroup_from_string(label.substr(dash + 1))};
}

}  // namespace

std::string to_string(Direction d) {
  switch (d) {
    case Direction::less: return "less";
    case Direction::greater: return "greater";
    case Direction::none: return "none";
  }
  return "none";
}

std::string to_string(Bucket b) {
  switch (b) {
    case Bucket::ns: return "ns";
    case Bucket::b1: return "b1";
    case Bucket::b2: return "b2";
    case Bucket::b3: return "b3";
    case Bucket::b4: return "b4";
  }
  return "ns";
}

Direction direction_from_string(const std::string& s) {
  if (s == "less") return Direction::less;
  if (s == "greater") return Direction::greater;
  if (s == "none") return Direction::none;
  throw ValidationError("unknown direction: " + s);
}

Bucket bucket_from_string(const std::string& s) {
  if (s == "ns") return Bucket::ns;
  if (s == "b1") return Bucket::b1;
  if (s == "b2") return Bucket::b2;
  if (s == "b3") return Bucket::b3;
  if (s == "b4") return Bucket::b4;
  throw ValidationError("unknown bucket: " + s);
}

Bucket bucket_for_p(double p) {
  if (p < 0.0001) return Bucket::b4;
  if (p < 0.001) return Bucket::b3;
  if (p < 0.01) return Bucket::b2;
  if (p < 0.05) return Bucket::b1;
  return Bucket::ns;
}

const std::vector<std::pair<Subgroup, Subgroup>>& SignificanceTable::pairs() {
  static const std::vector<std::pair<Subgroup, Subgroup>> order = {
      {Subgroup::HF, Subgroup::MF},
      {Subgroup::MF, Subgroup::HR},
      {Subgroup::HF, Subgroup::HR},
  };
  return order;
}

const PairwiseResult& SignificanceTable::row(
    const std::string& feature, const std::pair<Subgroup, Subgroup>& pair) const {
  for (const auto& r : rows)
    if (r.feature == feature && r.pair == pair) return r;
  throw ValidationError("no significance row for feature '" + feature + "' pair " +
                        pair_label(pair));
}

SignificanceTable significance_table(const textfeat::FeatureMatrix& matrix) {
  const auto& schema = textfeat::FeatureSchema::instance();
  if (!matrix.rows.empty() && matrix.rows.front().size() != schema.size())
    throw ValidationError("feature matrix width does not match schema");

  // collect row indices per compared subgroup
  std::map<Subgroup, std::vector<std::size_t>> members;
  for (std::size_t r = 0; r < matrix.subgroups.size(); ++r)
    members[matrix.subgroups[r]].push_back(r);
  for (Subgroup g : {Subgroup::HF, Subgroup::MF, Subgroup::HR})
    if (members[g].size() < 2)
      throw ValidationError("significance table needs >= 2 samples in subgroup " +
                            to_string(g));

  SignificanceTable table;
  table.rows.reserve(schema.size() * 3);
  for (std::size_t f = 0; f < schema.size(); ++f) {
    GroupSamples samples;
    std::map<Subgroup, double> means;
    for (Subgroup g : {Subgroup::HF, Subgroup::MF, Subgroup::HR}) {
      auto& values = samples.groups[g];
      values.reserve(members[g].size());
      for (std::size_t r : members[g]) values.push_back(matrix.rows[r][f]);
      double mean = 0.0;
      for (double v : values) mean += v;
      means[g] = mean / static_cast<double>(values.size());
    }

    // p-values keyed by unordered pair
    const auto comparisons = tukey_hsd(samples);
    auto p_for = [&](Subgroup a, Subgroup b) {
      for (const auto& c : comparisons)
        if ((c.a == a && c.b == b) || (c.a == b && c.b == a)) return c.p_value;
      throw ValidationError("missing Tukey comparison");
    };

    for (const auto& pair : SignificanceTable::pairs()) {
      PairwiseResult row;
      row.feature = schema.names()[f];
      row.pair = pair;
      row.p_value = p_for(pair.first, pair.second);
      row.bucket = bucket_for_p(row.p_value);
      if (row.bucket == Bucket::ns) {
        row.direction = Direction::none;
      } else {
        row.direction = means[pair.first] < means[pair.second] ? Direction::less
                                                               : Direction::greater;
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

std::string to_string(DebiasRule r) { return r == DebiasRule::A ? "A" : "B"; }

DebiasRule debias_rule_from_string(const std::string& s) {
  if (s == "A" || s == "a") return DebiasRule::A;
  if (s == "B" || s == "b") return DebiasRule::B;
  throw ValidationError("unknown debias rule: " + s + " (expected A or B)");
}

std::vector<std::string> select_debiased_features(const SignificanceTable& table,
                                                  DebiasRule rule) {
  const auto& schema = textfeat::FeatureSchema::instance();
  const auto hf_mf = SignificanceTable::pairs()[0];
  const auto hf_hr = SignificanceTable::pairs()[2];

  std::vector<std::string> selected;
  for (const auto& name : schema.names()) {
    const bool in_a = table.row(name, hf_mf).bucket == Bucket::ns;
    bool keep = in_a;
    if (rule == DebiasRule::B && !keep)
      keep = table.row(name, hf_hr).bucket != Bucket::ns;
    if (keep) selected.push_back(name);
  }
  if (selected.empty())
    throw ValidationError(
        "debias rule " + to_string(rule) +
        " selected no features; consider rule B or different significance thresholds");
  return selected;
}

void save_significance_csv(std::ostream& out, const SignificanceTable& table,
                           const std::vector<std::string>& meta) {
  for (const auto& line : meta) out << "# " << line << "\n";
  out << "feature,group_pair,direction,p_value,bucket\n";
  for (const auto& row : table.rows) {
    out << detail::csv_field(row.feature) << ',' << pair_label(row.pair) << ','
        << to_string(row.direction) << ',' << detail::format_double(row.p_value) << ','
        << to_string(row.bucket) << "\n";
  }
}

void save_significance_csv(const std::filesystem::path& file,
                           const SignificanceTable& table,
                           const std::vector<std::string>& meta) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write significance table: " + file.string());
  save_significance_csv(out, table, meta);
  if (!out) throw IoError("failed writing significance table: " + file.string());
}

SignificanceTable parse_significance_csv(std::istream& in) {
  SignificanceTable table;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = detail::split_csv_line(line);
    if (!header_seen) {
      if (fields != std::vector<std::string>{"feature", "group_pair", "direction",
                                             "p_value", "bucket"})
        throw ParseError("significance table header mismatch", line_no);
      header_seen = true;
      continue;
    }
    if (fields.size() != 5)
      throw ParseError("expected 5 fields, got " + std::to_string(fields.size()),
                       line_no);
    PairwiseResult row;
    row.feature = fields[0];
    row.pair = pair_from_label(fields[1], line_no);
    try {
      row.direction = direction_from_string(fields[2]);
      row.p_value = std::stod(fields[3]);
      row.bucket = bucket_from_string(fields[4]);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), line_no);
    } catch (const std::exception&) {
      throw ParseError("bad p_value '" + fields[3] + "'", line_no);
    }
    table.rows.push_back(std::move(row));
  }
  if (!header_seen) throw ParseError("significance table has no header", 1);
  return table;
}

SignificanceTable load_significance_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open significance table: " + file.string());
  try {
    return parse_significance_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(file.string() + ": " + e.what(), 0);
  }
}

std::string render_significance_table(const SignificanceTable& table) {
  const auto& schema = textfeat::FeatureSchema::instance();
  std::ostringstream out;

  auto stars = [](Bucket b) {
    switch (b) {
      case Bucket::b1: return "*";
      case Bucket::b2: return "**";
      case Bucket::b3: return "***";
      case Bucket::b4: return "****";
      case Bucket::ns: break;
    }
    return "";
  };
  auto cell = [&](const PairwiseResult& row) -> std::string {
    if (row.bucket == Bucket::ns) return "-";
    const char* op = row.direction == Direction::less ? "<" : ">";
    return to_string(row.pair.first) + " " + op + " " + to_string(row.pair.second) +
           " " + stars(row.bucket);
  };

  constexpr int kNameW = 24, kCellW = 16;
  out << std::left << std::setw(kNameW) << "feature";
  for (const auto& pair : SignificanceTable::pairs())
    out << std::setw(kCellW) << (to_string(pair.first) + " vs " + to_string(pair.second));
  out << "\n" << std::string(kNameW + 3 * kCellW, '-') << "\n";

  textfeat::FeatureGroup current_group{};
  bool first = true;
  for (const auto& name : schema.names()) {
    const auto group = schema.group(name);
    if (first || group != current_group) {
      out << "[" << textfeat::to_string(group) << "]\n";
      current_group = group;
      first = false;
    }
    out << std::left << std::setw(kNameW) << name;
    for (const auto& pair : SignificanceTable::pairs())
      out << std::setw(kCellW) << cell(table.row(name, pair));
    out << "\n";
  }
  return out.str();
}

}  // namespace newsaudit::stats

#include "scn/io.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace scn {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::int64_t parse_int(const std::string& s, std::size_t line, const char* what) {
  try {
    std::size_t pos = 0;
    std::int64_t v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (...) {
    throw io_error(std::string("malformed ") + what + ": '" + s + "'", line);
  }
}

}  // namespace

int parse_year_month(const std::string& s, std::size_t line) {
  if (s.size() != 7 || s[4] != '-')
    throw io_error("malformed month '" + s + "', expected YYYY-MM", line);
  int year, mon;
  try {
    year = std::stoi(s.substr(0, 4));
    mon = std::stoi(s.substr(5, 2));
  } catch (...) {
    throw io_error("malformed month '" + s + "'", line);
  }
  if (mon < 1 || mon > 12)
    throw io_error("month out of range in '" + s + "'", line);
  return year * 12 + (mon - 1);
}

std::string format_year_month(int month_index) {
  int year = month_index / 12, mon = month_index % 12 + 1;
  std::ostringstream os;
  os << std::setfill('0') << std::setw(4) << year << '-' << std::setw(2) << mon;
  return os.str();
}

TransactionReadResult read_transactions_csv(std::istream& in, bool lenient) {
  TransactionReadResult res;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv(line);
    if (!header_seen) {
      header_seen = true;
      if (!cells.empty() && cells[0] == "supplier_id") continue;  // header row
    }
    try {
      if (cells.size() < 3)
        throw io_error("expected supplier_id,buyer_id,month[,amount]", lineno);
      TransactionRecord tr;
      tr.supplier = parse_int(cells[0], lineno, "supplier_id");
      tr.buyer = parse_int(cells[1], lineno, "buyer_id");
      tr.month = parse_year_month(cells[2], lineno);
      if (cells.size() >= 4 && !cells[3].empty()) {
        try {
          tr.amount = std::stod(cells[3]);
          tr.has_amount = true;
        } catch (...) {
          throw io_error("malformed amount '" + cells[3] + "'", lineno);
        }
      }
      if (tr.supplier == tr.buyer) {
        ++res.rejected_self_loops;
        continue;
      }
      res.records.push_back(tr);
    } catch (const io_error& e) {
      if (!lenient) throw;
      res.errors.push_back(e.what());
    }
  }
  return res;
}

TransactionReadResult read_transactions_csv_file(const std::string& path,
                                                 bool lenient) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  return read_transactions_csv(in, lenient);
}

void write_intervals_csv(std::ostream& out, const std::vector<LinkInterval>& ivs) {
  out << "supplier_id,buyer_id,entry_month,exit_month\n";
  for (const auto& iv : ivs) {
    out << iv.supplier << ',' << iv.buyer << ',' << iv.entry_month << ','
        << iv.exit_month << '\n';
  }
}

std::vector<LinkInterval> read_intervals_csv(std::istream& in) {
  std::vector<LinkInterval> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv(line);
    if (lineno == 1 && !cells.empty() && cells[0] == "supplier_id") continue;
    if (cells.size() < 4) throw io_error("expected 4 columns", lineno);
    LinkInterval iv;
    iv.supplier = parse_int(cells[0], lineno, "supplier_id");
    iv.buyer = parse_int(cells[1], lineno, "buyer_id");
    iv.entry_month = static_cast<int>(parse_int(cells[2], lineno, "entry_month"));
    iv.exit_month = static_cast<int>(parse_int(cells[3], lineno, "exit_month"));
    out.push_back(iv);
  }
  return out;
}

std::vector<LinkInterval> read_intervals_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  return read_intervals_csv(in);
}

void write_timeline_csv(std::ostream& out, const ActivityTimeline& tl) {
  out << "month,links,firms\n";
  for (std::size_t i = 0; i < tl.links.size(); ++i) {
    out << (tl.t0 + static_cast<int>(i)) << ',' << tl.links[i] << ','
        << tl.firms[i] << '\n';
  }
}

void write_edges_csv(std::ostream& out, const Network& net) {
  out << "supplier_id,buyer_id\n";
  for (FirmId f : net.live_firms()) {
    for (FirmId b : net.customers_of(f)) out << f << ',' << b << '\n';
  }
}

void write_firms_csv(std::ostream& out, const Network& net) {
  out << "firm_id,sector\n";
  for (FirmId f : net.live_firms()) out << f << ',' << net.sector(f) << '\n';
}

Network read_network_csv(std::istream& firms, std::istream& edges,
                         int sector_count) {
  Network net(sector_count);
  std::string line;
  std::size_t lineno = 0;
  // Firm ids in the file may be sparse; map them onto fresh dense ids.
  std::map<std::int64_t, FirmId> id_map;
  while (std::getline(firms, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv(line);
    if (lineno == 1 && !cells.empty() && cells[0] == "firm_id") continue;
    if (cells.size() < 2) throw io_error("expected firm_id,sector", lineno);
    std::int64_t ext = parse_int(cells[0], lineno, "firm_id");
    int sector = static_cast<int>(parse_int(cells[1], lineno, "sector"));
    if (sector < 0 || sector >= sector_count)
      throw io_error("sector out of range: " + cells[1], lineno);
    if (id_map.count(ext)) throw io_error("duplicate firm " + cells[0], lineno);
    id_map[ext] = net.add_firm(sector);
  }
  lineno = 0;
  while (std::getline(edges, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv(line);
    if (lineno == 1 && !cells.empty() && cells[0] == "supplier_id") continue;
    if (cells.size() < 2) throw io_error("expected supplier_id,buyer_id", lineno);
    std::int64_t s = parse_int(cells[0], lineno, "supplier_id");
    std::int64_t b = parse_int(cells[1], lineno, "buyer_id");
    auto is = id_map.find(s), ib = id_map.find(b);
    if (is == id_map.end() || ib == id_map.end())
      throw io_error("edge references unknown firm", lineno);
    net.add_edge(is->second, ib->second);
  }
  return net;
}

Network read_network_csv_files(const std::string& firms_path,
                               const std::string& edges_path, int sector_count) {
  std::ifstream f(firms_path), e(edges_path);
  if (!f) throw io_error("cannot open " + firms_path);
  if (!e) throw io_error("cannot open " + edges_path);
  return read_network_csv(f, e, sector_count);
}

void write_step_reports_csv(std::ostream& out,
                            const std::vector<StepReport>& reports) {
  out << "step,N,L,firms_in,firms_out,links_in,links_out,isolated_removed\n";
  for (const auto& r : reports) {
    out << r.step << ',' << r.n_firms << ',' << r.n_edges << ','
        << r.firms_added << ',' << r.firms_removed << ',' << r.links_added
        << ',' << r.links_removed << ',' << r.isolated_removed << '\n';
  }
}

namespace {
using nlohmann::json;

json matrix_to_json(const std::vector<std::vector<double>>& m) { return json(m); }

}  // namespace

std::string params_to_json(const ModelParams& p) {
  json j;
  j["n_entry_mean"] = p.n_entry_mean;
  j["p_node_exit"] = p.p_node_exit;
  j["alpha0"] = p.alpha0;
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["p_remove_link"] = p.p_remove_link;
  j["sector_dist"] = p.sector_dist;
  j["frozen_sector_dist"] = p.frozen_sector_dist;
  j["poisson_stubs"] = p.poisson_stubs;
  j["sector_matrix"] = {{"sector_count", p.sector_matrix.sector_count},
                        {"pi", matrix_to_json(p.sector_matrix.pi)}};
  j["entry_degrees"] = {{"k_cap", p.entry_degrees.k_cap},
                        {"p", matrix_to_json(p.entry_degrees.p)}};
  return j.dump(2);
}

ModelParams params_from_json(const std::string& text) {
  json j = json::parse(text);
  ModelParams p;
  p.n_entry_mean = j.at("n_entry_mean").get<double>();
  p.p_node_exit = j.at("p_node_exit").get<double>();
  p.alpha0 = j.at("alpha0").get<double>();
  p.alpha = j.at("alpha").get<double>();
  p.beta = j.at("beta").get<double>();
  p.p_remove_link = j.at("p_remove_link").get<double>();
  p.sector_dist = j.value("sector_dist", std::vector<double>{});
  p.frozen_sector_dist = j.value("frozen_sector_dist", false);
  p.poisson_stubs = j.value("poisson_stubs", false);
  if (j.contains("sector_matrix")) {
    p.sector_matrix.sector_count = j["sector_matrix"].at("sector_count").get<int>();
    p.sector_matrix.pi =
        j["sector_matrix"].at("pi").get<std::vector<std::vector<double>>>();
  }
  if (j.contains("entry_degrees")) {
    p.entry_degrees.k_cap = j["entry_degrees"].at("k_cap").get<int>();
    p.entry_degrees.p =
        j["entry_degrees"].at("p").get<std::vector<std::vector<double>>>();
  }
  p.validate();
  return p;
}

ModelParams load_params_file(const std::string& path) {
  return params_from_json(read_text_file(path));
}

void save_params_file(const std::string& path, const ModelParams& p) {
  write_text_file(path, params_to_json(p) + "\n");
}

namespace {

json curve_to_json(const BinnedCurve& c) {
  json j;
  j["bin_lo"] = c.bin_lo;
  j["mean"] = c.mean;
  j["std_err"] = c.std_err;
  j["count"] = c.count;
  return j;
}

json ccdf_to_json(const std::vector<std::pair<double, double>>& pts) {
  json j = json::array();
  for (const auto& [x, p] : pts) j.push_back({x, p});
  return j;
}

json tail_to_json(const std::optional<TailFit>& t) {
  if (!t) return nullptr;
  return json{{"exponent", t->exponent},
              {"ci_lo", t->ci_lo},
              {"ci_hi", t->ci_hi},
              {"k_min", t->k_min},
              {"n_tail", t->n_tail}};
}

}  // namespace

std::string stats_to_json(const SnapshotStats& st) {
  json j;
  j["n_firms"] = st.n_firms;
  j["n_edges"] = st.n_edges;
  j["mean_degree"] = st.mean_degree;
  j["ccdf_total"] = ccdf_to_json(st.ccdf_total);
  j["ccdf_in"] = ccdf_to_json(st.ccdf_in);
  j["ccdf_out"] = ccdf_to_json(st.ccdf_out);
  j["tail_in"] = tail_to_json(st.tail_in);
  j["tail_out"] = tail_to_json(st.tail_out);
  j["knn"] = curve_to_json(st.knn);
  j["clustering"] = curve_to_json(st.clustering);
  return j.dump(2);
}

EssentialnessTable read_essentialness_csv(std::istream& in, int sector_count) {
  EssentialnessTable t =
      EssentialnessTable::uniform(sector_count, InputClass::NonEssential);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv(line);
    if (lineno == 1 && !cells.empty() && cells[0] == "input_sector") continue;
    if (cells.size() < 3)
      throw io_error("expected input_sector,firm_sector,class", lineno);
    int si = static_cast<int>(parse_int(cells[0], lineno, "input_sector"));
    int sf = static_cast<int>(parse_int(cells[1], lineno, "firm_sector"));
    if (si < 0 || si >= sector_count || sf < 0 || sf >= sector_count)
      throw io_error("sector out of range", lineno);
    InputClass c;
    if (cells[2] == "essential")
      c = InputClass::Essential;
    else if (cells[2] == "non-essential")
      c = InputClass::NonEssential;
    else if (cells[2] == "not-used")
      c = InputClass::NotUsed;
    else
      throw io_error("unknown class '" + cells[2] + "'", lineno);
    t.e[static_cast<std::size_t>(si)][static_cast<std::size_t>(sf)] = c;
  }
  return t;
}

EssentialnessTable read_essentialness_csv_file(const std::string& path,
                                               int sector_count) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  return read_essentialness_csv(in, sector_count);
}

void write_essentialness_csv(std::ostream& out, const EssentialnessTable& t) {
  out << "input_sector,firm_sector,class\n";
  for (int si = 0; si < t.sector_count; ++si) {
    for (int sf = 0; sf < t.sector_count; ++sf) {
      const char* c = "non-essential";
      if (t.at(si, sf) == InputClass::Essential) c = "essential";
      if (t.at(si, sf) == InputClass::NotUsed) c = "not-used";
      out << si << ',' << sf << ',' << c << '\n';
    }
  }
}

void write_esri_csv(std::ostream& out, const EsriProfile& profile) {
  out << "firm_id,esri,rank\n";
  out << std::setprecision(12);
  std::size_t rank = 1;
  for (const auto& e : profile.entries) {
    out << e.firm << ',' << e.esri << ',' << rank++ << '\n';
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot write " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace scn

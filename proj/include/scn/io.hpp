#ifndef SCN_IO_HPP
#define SCN_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "scn/calibration.hpp"
#include "scn/engine.hpp"
#include "scn/esri.hpp"
#include "scn/link_filter.hpp"
#include "scn/netstats.hpp"
#include "scn/network.hpp"

namespace scn {

class io_error : public std::runtime_error {
 public:
  io_error(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? what + " (line " + std::to_string(line) + ")"
                               : what),
        line_number(line) {}
  std::size_t line_number;
};

/// "YYYY-MM" -> months since year 0. Throws io_error on malformed input.
int parse_year_month(const std::string& s, std::size_t line = 0);
std::string format_year_month(int month_index);

struct TransactionReadResult {
  std::vector<TransactionRecord> records;
  std::vector<std::string> errors;      // populated in lenient mode
  std::size_t rejected_self_loops = 0;  // supplier == buyer rows
};

/// CSV with header supplier_id,buyer_id,month,amount (month as YYYY-MM,
/// amount optional/empty). Strict mode throws on the first malformed row.
TransactionReadResult read_transactions_csv(std::istream& in, bool lenient = false);
TransactionReadResult read_transactions_csv_file(const std::string& path,
                                                 bool lenient = false);

void write_intervals_csv(std::ostream& out, const std::vector<LinkInterval>& ivs);
std::vector<LinkInterval> read_intervals_csv(std::istream& in);
std::vector<LinkInterval> read_intervals_csv_file(const std::string& path);

void write_timeline_csv(std::ostream& out, const ActivityTimeline& tl);

// Edge-list snapshot: header supplier_id,buyer_id; firm table firm_id,sector.
void write_edges_csv(std::ostream& out, const Network& net);
void write_firms_csv(std::ostream& out, const Network& net);
Network read_network_csv(std::istream& firms, std::istream& edges,
                         int sector_count);
Network read_network_csv_files(const std::string& firms_path,
                               const std::string& edges_path, int sector_count);

void write_step_reports_csv(std::ostream& out,
                            const std::vector<StepReport>& reports);

std::string params_to_json(const ModelParams& p);
ModelParams params_from_json(const std::string& json_text);
ModelParams load_params_file(const std::string& path);
void save_params_file(const std::string& path, const ModelParams& p);

std::string stats_to_json(const SnapshotStats& st);

EssentialnessTable read_essentialness_csv(std::istream& in, int sector_count);
EssentialnessTable read_essentialness_csv_file(const std::string& path,
                                               int sector_count);
void write_essentialness_csv(std::ostream& out, const EssentialnessTable& t);

void write_esri_csv(std::ostream& out, const EsriProfile& profile);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace scn

#endif

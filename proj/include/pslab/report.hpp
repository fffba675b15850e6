#pragma once

#include "pslab/asymptotics.hpp"
#include "pslab/counting.hpp"
#include "pslab/expsum.hpp"
#include "pslab/exppair.hpp"
#include "pslab/hbdecomp.hpp"
#include "pslab/vaaler.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace pslab {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSchemaId = "pslab-report/1";

nlohmann::json versions_json();

nlohmann::json to_json(const CountReport& r);
nlohmann::json to_json(const ZSplit& s);
nlohmann::json to_json(const SigmaInterval& s);
nlohmann::json to_json(const AsymReport& r);
nlohmann::json to_json(const ExponentPair& p);
nlohmann::json to_json(const ScanStats& s);
nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const PrimeSumReport& r);
nlohmann::json to_json(const HBCheck& r);
nlohmann::json to_json(const WindowChoice& w);

/// Top-level envelope shared by every command; see docs/report.schema.
nlohmann::json make_envelope(const std::string& command, const nlohmann::json& config, const nlohmann::json& result,
                             double wall_time);

/// Minimal CSV table with stable column order.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string str() const;
};

std::string format_double(double v);

CsvTable count_csv(const std::vector<CountReport>& reports);
CsvTable asym_csv(const std::vector<AsymReport>& reports);

}  // namespace pslab

#pragma once

#include "povmcoh/pic.hpp"
#include "povmcoh/trine.hpp"

#include <json.hpp>
#include <string>

// JSON formats shared by the CLI and the file-based interfaces. A complex
// matrix is a nested array of [re, im] pairs in row-major order.

namespace povmcoh {

using Json = nlohmann::json;

Json matrix_to_json(const CMatrix &m);
CMatrix matrix_from_json(const Json &j);

Json povm_to_json(const Povm &p);           // {"dim": d, "effects": [...]}
Povm povm_from_json(const Json &j);

Json state_to_json(const DensityMatrix &rho); // {"dim": d, "matrix": ...}
DensityMatrix state_from_json(const Json &j);

// {"dim": d, "kraus": [...]}
Json kraus_to_json(const std::vector<CMatrix> &kraus);
std::vector<CMatrix> kraus_from_json(const Json &j);

// {"d": d, "d_prime": d', "kind": "...", "embedding": "...", "projectors": [...]}
Json extension_to_json(const NaimarkExtension &x);
NaimarkExtension extension_from_json(const Json &j);

Json coherence_report_to_json(const CoherenceReport &report);
Json pic_verdict_to_json(const PicVerdict &verdict, bool include_choi = false);

std::string landscape_to_csv(const std::vector<LandscapeSample> &samples);
Json landscape_to_json(const std::vector<LandscapeSample> &samples);

Json load_json_file(const std::string &path);
void save_text_file(const std::string &path, const std::string &text);

} // namespace povmcoh

#pragma once

#include <string>

#include "json.hpp"
#include "useries/universality.hpp"

namespace useries {

using Json = nlohmann::ordered_json;

Json step_to_json(const StepFunction& f);
StepFunction step_from_json(const Json& j);

Json set_to_json(const IntervalSet& s);
IntervalSet set_from_json(const Json& j);

Json coeffs_to_json(const TrigPolynomial& P);
TrigPolynomial coeffs_from_json(const Json& j);

Json lemma_to_json(const LemmaOutput& out);
Json report_to_json(const LemmaReport& rep);

/// Series bundle: depth, mode, enumeration indices, per-block metadata with
/// E_s and frequency ranges, and the global coefficient table. The reload
/// restores everything downstream modules consume (the per-piece internals
/// of each lemma run are construction detail and are not persisted).
Json series_to_json(const UniversalSeries& u);
UniversalSeries series_from_json(const Json& j);

Json weight_to_json(const Weight& w);
Weight weight_from_json(const Json& j);

Json plan_to_json(const RearrangementPlan& p);
Json selection_to_json(const UsualSenseSelection& s);

/// File helpers; save writes dump(2) plus a trailing newline.
void save_json(const Json& j, const std::string& path);
Json load_json(const std::string& path);

}  // namespace useries

#pragma once

#include <json.hpp>

#include "rigidity/certifier.hpp"
#include "rigidity/chain_rule.hpp"
#include "rigidity/covering.hpp"
#include "rigidity/curve.hpp"
#include "rigidity/line_geometry.hpp"
#include "rigidity/point_set.hpp"
#include "rigidity/remez.hpp"

namespace rigidity {

using json = nlohmann::ordered_json;

json to_json(const Vec& v);
Vec vec_from_json(const json& j, int expect_n = 0);

json to_json(const PointSet& z);
PointSet point_set_from_json(const json& j);

json to_json(const CoveringProfile& p);
json to_json(const BoxDimensionEstimate& e);

json to_json(const LineThroughPoint& line);
LineThroughPoint line_from_json(const json& j);

json to_json(const LineCertificate& c);
LineCertificate line_certificate_from_json(const json& j);

json to_json(const CurveSpec& spec);

json to_json(const ChainRuleConstants& c);

json to_json(const ThicknessWitness& w);
json to_json(const RigidityCertificate& cert);
json to_json(const CertifyResult& res);

json to_json(const RemezEstimate& est);

json to_json(const FindLineResult& r);

}  // namespace rigidity

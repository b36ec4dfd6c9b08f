// Copyright 2026 The goptier Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "goptier/pricing.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "goptier/error.hpp"
#include <nlohmann/json.hpp>

namespace goptier {
namespace {

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedCatalog, "malformed catalog: " + what);
}

}  // namespace

std::string_view TierName(TierId id) noexcept {
  switch (id) {
    case TierId::kStandard: return "Standard";
    case TierId::kStandardIA: return "StandardIA";
    case TierId::kOneZoneIA: return "OneZoneIA";
    case TierId::kGlacier: return "Glacier";
  }
  return "Unknown";
}

std::optional<TierId> ParseTierName(std::string_view name) noexcept {
  for (TierId id : {TierId::kStandard, TierId::kStandardIA, TierId::kOneZoneIA,
                    TierId::kGlacier}) {
    if (TierName(id) == name) return id;
  }
  return std::nullopt;
}

PricingCatalog::PricingCatalog(std::array<StorageTier, kTierCount> tiers,
                               double vm_hourly_rate)
    : tiers_(tiers), vm_hourly_rate_(vm_hourly_rate) {
  if (!(vm_hourly_rate_ > 0.0)) Malformed("vm_hourly_rate must be > 0");
  std::array<bool, kTierCount> seen_id{};
  std::array<bool, kTierCount> seen_rank{};
  for (const StorageTier& t : tiers_) {
    const auto id = static_cast<std::size_t>(t.id);
    if (id >= kTierCount) Malformed("unknown tier id");
    if (seen_id[id]) Malformed("duplicate tier id " + std::string(TierName(t.id)));
    seen_id[id] = true;
    if (t.rank < 1 || t.rank > kTierCount) {
      Malformed("rank out of range for " + std::string(TierName(t.id)));
    }
    if (seen_rank[t.rank - 1]) Malformed("duplicate rank " + std::to_string(t.rank));
    seen_rank[t.rank - 1] = true;
    if (!(t.price_per_gb_month > 0.0)) {
      Malformed("non-positive price for " + std::string(TierName(t.id)));
    }
  }
  std::sort(tiers_.begin(), tiers_.end(),
            [](const StorageTier& a, const StorageTier& b) { return a.rank < b.rank; });
  for (int i = 0; i + 1 < kTierCount; ++i) {
    if (!(tiers_[i].price_per_gb_month > tiers_[i + 1].price_per_gb_month)) {
      Malformed("price must strictly decrease with rank (rank " +
                std::to_string(i + 1) + " vs " + std::to_string(i + 2) + ")");
    }
  }
}

const StorageTier& PricingCatalog::by_rank(int rank) const {
  if (rank < 1 || rank > kTierCount) {
    throw Error(ErrorCode::kInvalidArgument, "tier rank out of range");
  }
  return tiers_[rank - 1];
}

const StorageTier& PricingCatalog::by_id(TierId id) const {
  for (const StorageTier& t : tiers_) {
    if (t.id == id) return t;
  }
  throw Error(ErrorCode::kInvalidArgument, "tier id not in catalog");
}

PricingCatalog PricingCatalog::Scaled(double factor) const {
  if (!(factor > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "scale factor must be > 0");
  }
  auto tiers = tiers_;
  for (StorageTier& t : tiers) t.price_per_gb_month *= factor;
  return PricingCatalog(tiers, vm_hourly_rate_ * factor);
}

PricingCatalog DefaultCatalog() {
  return PricingCatalog({StorageTier{TierId::kStandard, 0.023, 1},
                         StorageTier{TierId::kStandardIA, 0.0125, 2},
                         StorageTier{TierId::kOneZoneIA, 0.01, 3},
                         StorageTier{TierId::kGlacier, 0.001, 4}},
                        PricingCatalog::kDefaultVmHourlyRate);
}

PricingCatalog ParseCatalog(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    Malformed(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) Malformed("top level must be an object");
  if (!doc.contains("vm_hourly_rate") || !doc["vm_hourly_rate"].is_number()) {
    Malformed("missing numeric vm_hourly_rate");
  }
  if (!doc.contains("tiers") || !doc["tiers"].is_array()) {
    Malformed("missing tiers array");
  }
  const auto& list = doc["tiers"];
  if (list.size() != kTierCount) {
    Malformed("expected exactly 4 tiers, got " + std::to_string(list.size()));
  }
  std::array<StorageTier, kTierCount> tiers;
  for (std::size_t i = 0; i < kTierCount; ++i) {
    const auto& rec = list[i];
    if (!rec.is_object() || !rec.contains("id") || !rec["id"].is_string() ||
        !rec.contains("price_per_gb_month") || !rec["price_per_gb_month"].is_number() ||
        !rec.contains("rank") || !rec["rank"].is_number_integer()) {
      Malformed("tier record " + std::to_string(i) +
                " needs id, price_per_gb_month and integer rank");
    }
    auto id = ParseTierName(rec["id"].get<std::string>());
    if (!id) Malformed("unknown tier id '" + rec["id"].get<std::string>() + "'");
    tiers[i] = StorageTier{*id, rec["price_per_gb_month"].get<double>(),
                           rec["rank"].get<int>()};
  }
  return PricingCatalog(tiers, doc["vm_hourly_rate"].get<double>());
}

PricingCatalog LoadCatalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open catalog " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseCatalog(buf.str());
}

std::string SerializeCatalog(const PricingCatalog& catalog) {
  nlohmann::ordered_json doc;
  doc["vm_hourly_rate"] = catalog.vm_hourly_rate();
  doc["tiers"] = nlohmann::ordered_json::array();
  for (const StorageTier& t : catalog.tiers()) {
    nlohmann::ordered_json rec;
    rec["id"] = std::string(TierName(t.id));
    rec["price_per_gb_month"] = t.price_per_gb_month;
    rec["rank"] = t.rank;
    doc["tiers"].push_back(rec);
  }
  return doc.dump(2) + "\n";
}

}  // namespace goptier

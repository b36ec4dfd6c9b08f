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

#ifndef GOPTIER_PRICING_HPP_
#define GOPTIER_PRICING_HPP_

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace goptier {

enum class TierId { kStandard, kStandardIA, kOneZoneIA, kGlacier };

inline constexpr int kTierCount = 4;

std::string_view TierName(TierId id) noexcept;
std::optional<TierId> ParseTierName(std::string_view name) noexcept;

struct StorageTier {
  TierId id = TierId::kStandard;
  double price_per_gb_month = 0.0;  // USD
  int rank = 1;                     // 1 = most expensive

  bool operator==(const StorageTier&) const = default;
};

// Immutable once built. Tiers are held sorted by rank, so tiers()[0] is always
// the rank-1 (most expensive) tier.
class PricingCatalog {
 public:
  static constexpr double kDefaultVmHourlyRate = 0.20;

  // Throws Error(kMalformedCatalog) unless the tiers are four distinct ids
  // whose ranks are a permutation of 1..4 with strictly decreasing price.
  PricingCatalog(std::array<StorageTier, kTierCount> tiers,
                 double vm_hourly_rate);

  const std::array<StorageTier, kTierCount>& tiers() const { return tiers_; }
  double vm_hourly_rate() const { return vm_hourly_rate_; }

  const StorageTier& by_rank(int rank) const;
  const StorageTier& by_id(TierId id) const;
  double price(TierId id) const { return by_id(id).price_per_gb_month; }

  // Every tier price and the VM rate multiplied by `factor` (> 0).
  PricingCatalog Scaled(double factor) const;

  bool operator==(const PricingCatalog&) const = default;

 private:
  std::array<StorageTier, kTierCount> tiers_;
  double vm_hourly_rate_;
};

// Amazon S3 rates: Standard 0.023, Standard-IA 0.0125, One Zone-IA 0.01,
// Glacier 0.001 USD per GB-month; VM rate kDefaultVmHourlyRate.
PricingCatalog DefaultCatalog();

// Catalog documents are JSON:
//   {"vm_hourly_rate": 0.2,
//    "tiers": [{"id": "Standard", "price_per_gb_month": 0.023, "rank": 1}, ...]}
PricingCatalog ParseCatalog(std::string_view json_text);
PricingCatalog LoadCatalog(const std::filesystem::path& path);
std::string SerializeCatalog(const PricingCatalog& catalog);

}  // namespace goptier

#endif  // GOPTIER_PRICING_HPP_

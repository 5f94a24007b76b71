// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "support/generators.hpp"
#include "temporalex/corpus.hpp"

namespace temporalex::testing {

/// Two versions of a probation article with a gap between them, plus an
/// unrelated theft article.
inline std::vector<ProvisionVersion> article74_fixture() {
  return {
      provision("criminal-law", "Article 74", "2009",
                "A convict granted probation shall report regularly to the supervising authority.",
                "2009-02-28", "2011-04-30"),
      provision("criminal-law", "Article 74", "2023",
                "Probation conditions: a convict shall observe the probation conditions set by "
                "the court and accept electronic monitoring.",
                "2023-03-01", nullptr),
      provision("criminal-law", "Article 264", "1997",
                "Whoever steals a relatively large amount of property shall be sentenced.",
                "1997-10-01", nullptr),
  };
}

}  // namespace temporalex::testing

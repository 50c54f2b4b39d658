// Copyright 2026 The tempologic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>

namespace tempologic {

// Shortest decimal form that round-trips to the same double. Locale
// independent, so output files are byte-stable across machines.
std::string format_number(double value);

// Quotes a CSV field when it contains a separator, quote or newline.
std::string csv_field(std::string_view text);

}  // namespace tempologic

/*
 * Copyright 2026 The bayes-attrib Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "bayes_attrib/parallel.hpp"

#include <cstdlib>
#include <string>

#include "bayes_attrib/data.hpp"
#include "bayes_attrib/error.hpp"

namespace bayes_attrib {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BAYES_ATTRIB_THREADS"); env && *env) {
    auto v = parse_number(env);
    if (!v || *v < 1 || *v != static_cast<int>(*v)) {
      fail(ErrorKind::kInvalidArgument,
           std::string("BAYES_ATTRIB_THREADS must be a positive integer, got '") + env + "'");
    }
    return static_cast<int>(*v);
  }
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

}  // namespace bayes_attrib

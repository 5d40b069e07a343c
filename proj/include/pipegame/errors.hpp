// Copyright 2026 The pipegame Authors
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

#ifndef PIPEGAME_ERRORS_HPP
#define PIPEGAME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pipegame {

/// A scenario document violates the schema or references unknown entities.
/// The message names the offending field.
class scenario_error : public std::runtime_error {
public:
    explicit scenario_error(const std::string& what) : std::runtime_error(what) {}
};

/// A scenario file could not be opened or read.
class file_error : public std::runtime_error {
public:
    explicit file_error(const std::string& what) : std::runtime_error(what) {}
};

/// A member demand cannot be served with the sub-network available to its
/// coalition. Carries the index of a node whose balance cannot be met.
class infeasible_error : public std::runtime_error {
public:
    infeasible_error(const std::string& what, int node)
        : std::runtime_error(what), node_(node) {}

    int node() const { return node_; }

private:
    int node_;
};

/// A condition the algorithms guarantee by construction failed anyway
/// (e.g. an unbounded LP even though every variable is boxed).
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace pipegame

#endif  // PIPEGAME_ERRORS_HPP

// Copyright 2026 The agtk Authors.
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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ag {

// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A malformed identifier, label or time value.
class InvalidValue : public Error {
 public:
  using Error::Error;
};

// The arc set contains a directed cycle. `cycle()` lists the node ids in
// order, the first node repeated at the end.
class CycleError : public Error {
 public:
  explicit CycleError(std::vector<std::string> cycle);
  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

// Times decrease along a chain of arcs. `arc()` is the serialized arc at
// which the decrease was detected.
class OrderViolation : public Error {
 public:
  OrderViolation(std::string arc, const std::string& detail);
  const std::string& arc() const { return arc_; }

 private:
  std::string arc_;
};

// One node id is given two different times.
class AnchorConflict : public Error {
 public:
  AnchorConflict(std::string node, std::string first, std::string second);
  const std::string& node() const { return node_; }

 private:
  std::string node_;
};

class UnknownNode : public Error {
 public:
  explicit UnknownNode(const std::string& node)
      : Error("unknown node: " + node) {}
};

class UnknownArc : public Error {
 public:
  explicit UnknownArc(const std::string& arc) : Error("unknown arc: " + arc) {}
};

// Malformed input text; line and column are 1-based (0 when unknown).
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class NotAnchored : public Error {
 public:
  using Error::Error;
};

class InvalidTypeOrder : public Error {
 public:
  using Error::Error;
};

class BadPattern : public Error {
 public:
  using Error::Error;
};

class LayoutOverflow : public Error {
 public:
  using Error::Error;
};

// Importer errors. All are syntax errors in the broad sense, so they carry
// a source position.
class NonMonotonicSpan : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class DanglingAnchor : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class OrphanDependentTier : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class XmlError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class AlignmentMismatch : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class NonMonotonicSync : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class UnbalancedTag : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class DanglingDominance : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

}  // namespace ag

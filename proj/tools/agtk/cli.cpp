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


#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ag/encoding.hpp"
#include "ag/errors.hpp"
#include "ag/import.hpp"
#include "ag/index.hpp"
#include "ag/query.hpp"
#include "ag/render.hpp"
#include "ag/type_order.hpp"
#include "ag/validate.hpp"

namespace agtk {
namespace {

// Input errors that are not the library's own.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string operator()(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
      ss << in_.rdbuf();
      return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot read " + path);
    ss << f.rdbuf();
    return ss.str();
  }

 private:
  std::istream& in_;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::pair<std::string, std::string> split_pair(const std::string& s, const std::string& flag) {
  auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
    throw InputError(flag + " expects NAME=VALUE, got '" + s + "'");
  }
  return {s.substr(0, eq), s.substr(eq + 1)};
}

struct ImportArgs {
  std::string format;
  long long rate = 16000;
  bool merge_speaker = false;
  std::string prefix;
  std::vector<std::string> maps;
  bool normalize = false;
  std::vector<std::string> files;
};

int do_import(const ImportArgs& a, Reader& read, std::ostream& out) {
  ag::ImportOptions opts;
  opts.sample_rate = a.rate;
  opts.merge_same_speaker = a.merge_speaker;
  opts.node_prefix = a.prefix;
  for (const auto& m : a.maps) opts.type_prefix_map.insert(split_pair(m, "--map"));
  auto format = *ag::parse_source_format(a.format);
  auto one = [&]() {
    if (a.files.size() != 1) {
      throw InputError("--format " + a.format + " takes exactly one file");
    }
    return read(a.files[0]);
  };
  ag::ImportedGraph r;
  switch (format) {
    case ag::SourceFormat::Timit: {
      if (a.files.size() > 2) throw InputError("--format timit takes a .wrd and a .phn file");
      std::string wrd;
      std::string phn;
      for (const auto& f : a.files) {
        bool is_phn = ends_with(f, ".phn") || (a.files.size() == 2 && &f == &a.files[1] &&
                                                !ends_with(a.files[0], ".phn"));
        (is_phn ? phn : wrd) = read(f);
      }
      r = ag::import_timit(wrd, phn, opts);
      break;
    }
    case ag::SourceFormat::Partitur:
      r = ag::import_partitur(one(), opts);
      break;
    case ag::SourceFormat::Chat:
      r = ag::import_chat(one(), opts);
      break;
    case ag::SourceFormat::Lacito:
      r = ag::import_lacito(one(), opts);
      break;
    case ag::SourceFormat::LdcBn:
      r = ag::import_ldc_bn(one(), opts);
      break;
    case ag::SourceFormat::Callhome:
      r = ag::import_callhome(one(), opts);
      break;
    case ag::SourceFormat::Utf:
      r = ag::import_utf(one(), opts);
      break;
    case ag::SourceFormat::Emu: {
      std::vector<std::string> labels;
      for (std::size_t i = 1; i < a.files.size(); ++i) labels.push_back(read(a.files[i]));
      r = ag::import_emu(read(a.files[0]), labels, opts);
      break;
    }
  }
  ag::SerializeOptions so;
  so.preserve_times = !a.normalize;
  so.comments = r.comments;
  out << ag::serialize(r.graph, so);
  return 0;
}

struct ValidateArgs {
  std::string vocab;
  std::string order;
  std::string contain;
  std::string require = "anchored";
  std::string mode = "either";
  std::vector<std::string> promote;
  bool json = false;
  std::string file = "-";
};

int do_validate(const ValidateArgs& a, Reader& read, std::ostream& out) {
  ag::StructureOptions so;
  so.required = a.require == "general"  ? ag::AnchorClass::General
                : a.require == "total" ? ag::AnchorClass::TotallyAnchored
                                       : ag::AnchorClass::Anchored;
  ag::TypeOrder order;
  if (!a.order.empty()) order = ag::TypeOrder::parse(read(a.order));
  std::optional<ag::Vocabulary> vocab;
  if (!a.vocab.empty()) vocab = ag::parse_vocabulary(read(a.vocab));
  std::optional<ag::ContainmentRules> rules;
  if (!a.contain.empty()) rules = ag::parse_containment(read(a.contain));

  auto lines = ag::parse_lines(read(a.file));
  ag::ValidationReport report = ag::validate_lines(lines, so);
  bool buildable = std::none_of(report.findings().begin(), report.findings().end(),
                                [](const ag::Finding& f) {
                                  return f.code == "cycle" || f.code == "order-violation" ||
                                         f.code == "anchor-conflict";
                                });
  if (buildable && (vocab || rules)) {
    auto g = ag::graph_from_lines(lines);
    if (vocab) report.add(ag::validate_content(g, *vocab));
    if (rules) {
      ag::HierarchyOptions ho;
      ho.mode = *ag::parse_inclusion_mode(a.mode);
      report.add(ag::validate_hierarchy(g, order, *rules, ho));
    }
  }
  report.promote({a.promote.begin(), a.promote.end()});
  out << (a.json ? report.json() + "\n" : report.text());
  return report.errors() > 0 ? 1 : 0;
}

struct IndexArgs {
  std::string kind;
  std::string order;
  std::string mode = "s";
  bool normalize = false;
  std::string file = "-";
};

int do_index(const IndexArgs& a, Reader& read, std::ostream& out) {
  bool preserve = !a.normalize;
  if (a.kind == "hierarchy" && a.order.empty()) {
    throw InputError("--kind hierarchy needs --order FILE");
  }
  std::optional<ag::TypeOrder> order;
  if (!a.order.empty()) order = ag::TypeOrder::parse(read(a.order));
  auto g = ag::parse(read(a.file));
  if (a.kind == "time") {
    out << ag::TimeLocalIndex::build(g).text(preserve);
  } else if (a.kind == "type") {
    out << ag::TypeLocalIndex::build(g).text(preserve);
  } else {
    out << ag::HierarchyIndex::build(g, *order, *ag::parse_inclusion_mode(a.mode)).text(preserve);
  }
  return 0;
}

struct QueryArgs {
  std::string expr;
  std::string file = "-";
  bool naive = false;
  bool count = false;
  bool normalize = false;
};

int do_query(const QueryArgs& a, Reader& read, std::ostream& out) {
  auto p = ag::parse_query(a.expr);
  auto g = ag::parse(read(a.file));
  auto result = a.naive ? ag::select(g, p) : ag::select(ag::QueryIndex::build(g), p);
  if (a.count) {
    out << result.arc_count() << "\n";
  } else {
    ag::SerializeOptions so;
    so.preserve_times = !a.normalize;
    out << ag::serialize(result, so);
  }
  return 0;
}

struct RenderArgs {
  std::string format = "text";
  int width = 0;
  bool node_ids = false;
  bool no_timeline = false;
  std::vector<std::string> classes;
  std::vector<std::string> levels;
  bool check_planar = false;
  std::string file = "-";
};

int do_render(const RenderArgs& a, Reader& read, std::ostream& out) {
  auto g = ag::parse(read(a.file));
  std::set<std::string> classes(a.classes.begin(), a.classes.end());
  if (a.check_planar) {
    out << (ag::check_rightward_planar(g, classes) ? "planar" : "not planar") << "\n";
    return 0;
  }
  ag::RenderOptions opts;
  opts.output = a.format == "svg" ? ag::RenderFormat::Svg : ag::RenderFormat::Text;
  opts.width = a.width;
  opts.show_node_ids = a.node_ids;
  opts.timeline = !a.no_timeline;
  opts.class_types = classes;
  for (const auto& l : a.levels) {
    auto [type, level] = split_pair(l, "--level");
    try {
      std::size_t used = 0;
      int n = std::stoi(level, &used);
      if (used != level.size() || n < 0) throw std::invalid_argument(level);
      opts.level_assignment[type] = n;
    } catch (const std::logic_error&) {
      throw InputError("--level expects TYPE=N with N >= 0, got '" + l + "'");
    }
  }
  out << ag::render_score(g, opts);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  // Repeatable options take one value per occurrence, so a trailing
  // positional file is never swallowed.
  CLI::App app{"Annotation graph toolkit: import, check, index, query and draw "
               "time-aligned annotations in the tuple format.",
               "agtk"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  ImportArgs ia;
  auto* imp = app.add_subcommand("import", "Convert a corpus file to tuple text");
  imp->add_option("--format", ia.format, "Source format")
      ->required()
      ->check(CLI::IsMember(
          {"timit", "partitur", "chat", "lacito", "ldc-bn", "callhome", "utf", "emu"}));
  imp->add_option("--rate", ia.rate, "Samples per second (TIMIT, Partitur)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  imp->add_flag("--merge-speaker", ia.merge_speaker, "CALLHOME: join a speaker's stretches");
  imp->add_option("--node-prefix", ia.prefix, "Prefix for generated node ids");
  imp->add_option("--map", ia.maps, "Tier or level to label type, TIER=TYPE")
      ->allow_extra_args(false);
  imp->add_flag("--normalize-times", ia.normalize, "Write times as shortest decimals");
  imp->add_option("files", ia.files, "Input files, - for standard input")->required();

  ValidateArgs va;
  auto* val = app.add_subcommand("validate", "Check a tuple file");
  val->add_option("--vocab", va.vocab, "Permitted contents, TYPE: items lines");
  val->add_option("--order", va.order, "Type order, HIGH > LOW lines");
  val->add_option("--contain", va.contain, "Containment rules, OUTER contains INNER lines");
  val->add_option("--require", va.require, "Anchoring required")
      ->check(CLI::IsMember({"general", "anchored", "total"}))
      ->capture_default_str();
  val->add_option("--mode", va.mode, "Inclusion for containment rules")
      ->check(CLI::IsMember({"s", "t", "either"}))
      ->capture_default_str();
  val->add_option("--promote", va.promote, "Finding codes to treat as errors")
      ->allow_extra_args(false);
  val->add_flag("--json", va.json, "Report as JSON");
  val->add_option("file", va.file, "Tuple file, - for standard input")->capture_default_str();

  IndexArgs xa;
  auto* idx = app.add_subcommand("index", "Print an index of a tuple file");
  idx->add_option("--kind", xa.kind, "Index kind")
      ->required()
      ->check(CLI::IsMember({"time", "type", "hierarchy"}));
  idx->add_option("--order", xa.order, "Type order for the hierarchy index");
  idx->add_option("--mode", xa.mode, "Inclusion for the hierarchy index")
      ->check(CLI::IsMember({"s", "t", "either", "general"}))
      ->capture_default_str();
  idx->add_flag("--normalize-times", xa.normalize, "Write times as shortest decimals");
  idx->add_option("file", xa.file, "Tuple file, - for standard input")->capture_default_str();

  QueryArgs qa;
  auto* qry = app.add_subcommand("query", "Select the arcs matching an expression");
  qry->add_option("expr", qa.expr, "Query, e.g. type=W & content~\"^th\"")->required();
  qry->add_option("file", qa.file, "Tuple file, - for standard input")->capture_default_str();
  qry->add_flag("--naive", qa.naive, "Scan every arc instead of using the indexes");
  qry->add_flag("--count", qa.count, "Print only the number of matching arcs");
  qry->add_flag("--normalize-times", qa.normalize, "Write times as shortest decimals");

  std::vector<std::string> merge_files;
  bool merge_normalize = false;
  auto* mrg = app.add_subcommand("merge", "Union of tuple files");
  mrg->add_option("files", merge_files, "Tuple files, - for standard input")->required();
  mrg->add_flag("--normalize-times", merge_normalize, "Write times as shortest decimals");

  std::string old_file;
  std::string new_file;
  bool diff_normalize = false;
  auto* dif = app.add_subcommand("diff", "Arcs removed and added between two tuple files");
  dif->add_option("old", old_file, "Old tuple file")->required();
  dif->add_option("new", new_file, "New tuple file")->required();
  dif->add_flag("--normalize-times", diff_normalize, "Write times as shortest decimals");

  RenderArgs ra;
  auto* ren = app.add_subcommand("render", "Draw a tuple file in score notation");
  ren->add_option("--format", ra.format, "Output format")
      ->check(CLI::IsMember({"svg", "text"}))
      ->capture_default_str();
  ren->add_option("--width", ra.width, "Columns per page (text) or pixels (SVG)")
      ->check(CLI::PositiveNumber);
  ren->add_flag("--node-ids", ra.node_ids, "Label arc ends with node ids");
  ren->add_flag("--no-timeline", ra.no_timeline, "Omit the timeline");
  ren->add_option("--class", ra.classes, "Label type drawn as coindexing")
      ->allow_extra_args(false);
  ren->add_option("--level", ra.levels, "Row for a type, TYPE=N")
      ->allow_extra_args(false);
  ren->add_flag("--check-planar", ra.check_planar, "Only report whether rows can avoid crossings");
  ren->add_option("file", ra.file, "Tuple file, - for standard input")->capture_default_str();

  std::vector<std::string> argv_store{"agtk"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  Reader read(in);
  try {
    if (*imp) return do_import(ia, read, out);
    if (*val) return do_validate(va, read, out);
    if (*idx) return do_index(xa, read, out);
    if (*qry) return do_query(qa, read, out);
    if (*mrg) {
      std::vector<std::string> texts;
      for (const auto& f : merge_files) texts.push_back(read(f));
      ag::SerializeOptions so;
      so.preserve_times = !merge_normalize;
      out << ag::serialize(ag::merge(texts), so);
      return 0;
    }
    if (*dif) {
      auto before = ag::parse(read(old_file));
      auto after = ag::parse(read(new_file));
      out << ag::format_delta(ag::delta(before, after), !diff_normalize);
      return 0;
    }
    if (*ren) return do_render(ra, read, out);
  } catch (const ag::Error& e) {
    err << "agtk: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    err << "agtk: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace agtk

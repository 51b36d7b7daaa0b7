// Command-line front end. Exit codes: 0 consistent, 1 inconsistent,
// 2 unreadable input, 3 search bound exceeded.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "proctime/adaptation.hpp"
#include "proctime/dsl.hpp"
#include "proctime/errors.hpp"
#include "proctime/timeml.hpp"
#include "proctime/workflow.hpp"

using namespace proctime;

namespace {

struct Input {
  std::vector<Scenario> scenarios;
  std::vector<RepetitionMarker> markers;
  Recipe recipe;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path, 0);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

bool has_extension(const std::string& path, std::string_view ext) { return path.ends_with(ext); }

Input load(const std::string& path) {
  Input in;
  if (has_extension(path, ".rcp")) {
    in.recipe = parse_recipe_dsl(read_file(path));
    in.scenarios = encode_recipe(in.recipe);
    in.markers = in.recipe.markers;
  } else if (has_extension(path, ".tml")) {
    auto encoded = doc_to_hybrid(parse_timeml(read_file(path)));
    in.scenarios.push_back({"base", std::move(encoded.network)});
    in.markers = std::move(encoded.markers);
  } else {
    throw ParseError(path + ": expected a .rcp or .tml file", 0);
  }
  return in;
}

void header(const Input& in, const Scenario& s) {
  if (in.scenarios.size() > 1) std::cout << "# scenario " << s.label << "\n";
}

int check(const std::string& path) {
  const Input in = load(path);
  bool all = true;
  for (const auto& s : in.scenarios) {
    const bool ok = hybrid_close(s.network).consistent && hybrid_consistent(s.network);
    all = all && ok;
    if (in.scenarios.size() > 1) std::cout << s.label << ": ";
    std::cout << (ok ? "consistent" : "inconsistent") << "\n";
  }
  return all ? 0 : 1;
}

int close(const std::string& path) {
  const Input in = load(path);
  bool all = true;
  for (const auto& s : in.scenarios) {
    header(in, s);
    auto closed = hybrid_close(s.network);
    all = all && closed.consistent;
    std::cout << (closed.consistent ? serialize(closed.network) : "inconsistent\n");
  }
  return all ? 0 : 1;
}

int query(const std::string& path, const std::string& a, const std::string& b) {
  const Input in = load(path);
  bool all = true;
  for (const auto& s : in.scenarios) {
    if (!s.network.find_interval(a) || !s.network.find_interval(b)) {
      if (in.scenarios.size() == 1) throw ModelError("unknown interval '" + (s.network.find_interval(a) ? b : a) + "'");
      continue;
    }
    header(in, s);
    auto closed = hybrid_close(s.network);
    if (!closed.consistent) {
      all = false;
      std::cout << "inconsistent\n";
      continue;
    }
    const auto& h = closed.network;
    std::cout << to_string(h.qcn().at(a, b)) << "\n";
    const auto pa = h.points_of(a), pb = h.points_of(b);
    for (std::size_t from : {pa.start, pa.end})
      for (std::size_t to : {pb.start, pb.end})
        std::cout << h.stp().point(to).id << " - " << h.stp().point(from).id << " in "
                  << to_string(h.stp().window(from, to)) << "\n";
  }
  return all ? 0 : 1;
}

int adapt(const std::string& recipe_path, const std::string& knowledge_path) {
  const Input in = load(recipe_path);
  const DomainKnowledge k = parse_knowledge_dsl(read_file(knowledge_path));
  const RevisionResult r = revise(prepare_adaptation(in.scenarios.front().network, k));
  std::cout << "# revision\n" << serialize(r) << "# edits\n" << serialize(adapt_text_edits(r, in.recipe));
  return 0;
}

int workflow(const std::string& path) {
  const Input in = load(path);
  std::cout << emit_dot(to_workflow(in.scenarios, in.markers));
  return 0;
}

int timeml(const std::string& path) {
  const Qcn q = doc_to_qcn(parse_timeml(read_file(path)));
  const bool ok = close_qcn(q).consistent && atomic_consistent(q);
  std::cout << serialize(q) << (ok ? "consistent" : "inconsistent") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Temporal reasoning over recipe texts"};
  app.require_subcommand(1);
  std::string file, second, a, b;
  int code = 0;

  auto* c = app.add_subcommand("check", "encode and test consistency");
  c->add_option("file", file)->required();
  c->callback([&] { code = check(file); });

  auto* cl = app.add_subcommand("close", "print the closed network");
  cl->add_option("file", file)->required();
  cl->callback([&] { code = close(file); });

  auto* q = app.add_subcommand("query", "print the closed relation and windows between two intervals");
  q->add_option("file", file)->required();
  q->add_option("a", a)->required();
  q->add_option("b", b)->required();
  q->callback([&] { code = query(file, a, b); });

  auto* ad = app.add_subcommand("adapt", "revise a recipe with domain knowledge");
  ad->add_option("recipe", file)->required();
  ad->add_option("knowledge", second)->required();
  ad->callback([&] { code = adapt(file, second); });

  auto* w = app.add_subcommand("workflow", "print the workflow graph");
  w->add_option("file", file)->required();
  w->callback([&] { code = workflow(file); });

  auto* t = app.add_subcommand("timeml", "read annotated text, print its network");
  t->add_option("file", file)->required();
  t->callback([&] { code = timeml(file); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ScaleError& e) {
    std::cerr << "too large: " << e.what() << "\n";
    return 3;
  }
  return code;
}

// One line per acceptance criterion: PASS, FAIL or SKIP, with a short
// reason on failure. Exit status is nonzero when any criterion fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "proctime/adaptation.hpp"
#include "proctime/dsl.hpp"
#include "proctime/errors.hpp"
#include "proctime/timeml.hpp"
#include "proctime/workflow.hpp"
#include "support/files.hpp"
#include "support/oracles.hpp"

using namespace proctime;
using B = BaseRelation;
using proctime::testing::data_file;
using proctime::testing::read_text;

namespace {

// Collects failed expectations of one criterion.
struct Check {
  std::vector<std::string> failures;
  std::size_t count = 0;
  void expect(bool ok, const std::string& what) {
    ++count;
    if (!ok && failures.size() < 5) failures.push_back(what);
  }
};

Recipe recipe(const char* name) { return parse_recipe_dsl(data_file(name)); }
HybridNetwork base_network(const char* name) { return encode_recipe(recipe(name))[0].network; }

Relation random_relation(std::mt19937& rng) {
  return Relation::from_mask(static_cast<Relation::Mask>(rng() & Relation::kFullMask));
}

void composition_table(Check& c) {
  const auto table = oracle::enumerate_composition_table();
  for (auto r1 : kAllBaseRelations)
    for (auto r2 : kAllBaseRelations)
      c.expect(compose(r1, r2) == table[index_of(r1)][index_of(r2)],
               std::string(name_of(r1)) + " o " + std::string(name_of(r2)));
}

void algebra_laws(Check& c) {
  const Relation e = Relation::identity();
  for (auto a : kAllBaseRelations) {
    const Relation r(a);
    c.expect(converse(converse(r)) == r, "converse involution");
    c.expect(compose(e, r) == r && compose(r, e) == r, "identity");
    for (auto b : kAllBaseRelations)
      c.expect(converse(compose(a, b)) == compose(converse(b), converse(a)), "converse of composition");
  }
  std::mt19937 rng(1983);
  for (int k = 0; k < 2000; ++k) {
    const Relation r = random_relation(rng), s = random_relation(rng);
    c.expect(converse(converse(r)) == r, "converse involution on " + to_string(r));
    c.expect(compose(e, r) == r && compose(r, e) == r, "identity on " + to_string(r));
    c.expect(converse(compose(r, s)) == compose(converse(s), converse(r)), "converse of composition");
  }
}

void worked_network(Check& c) {
  const HybridNetwork h = base_network("lutheran.rcp");
  const auto closed = hybrid_close(h);
  c.expect(closed.consistent && hybrid_consistent(h), "network consistent");
  if (!closed.consistent) return;
  const Qcn& q = closed.network.qcn();
  c.expect(q.at("mince_garlic", "prepare_pasta") == Relation(B::b), "mince_garlic -> prepare_pasta");
  const Relation cell = q.at("combine", "prepare_pasta");
  c.expect(cell == Relation(B::bi) || cell == Relation(B::mi) || cell == Relation{B::bi, B::mi},
           "combine -> prepare_pasta is " + to_string(cell));

  Qcn core({"mince_garlic", "brown_hamburger", "prepare_pasta", "combine"});
  for (std::size_t i = 0; i < core.size(); ++i)
    for (std::size_t j = i + 1; j < core.size(); ++j) core.set(i, j, h.qcn().at(core.id(i), core.id(j)));
  Relation realizable;
  for (auto atom : Relation::full().atoms()) {
    Qcn fixed = core;
    fixed.set(core.index("combine"), core.index("prepare_pasta"), atom);
    if (realize_small(fixed)) realizable |= atom;
  }
  c.expect(cell == realizable, "realization oracle gives " + to_string(realizable));
}

void closure_vs_oracle(Check& c) {
  for (auto xy : kAllBaseRelations)
    for (auto xz : kAllBaseRelations)
      for (auto yz : kAllBaseRelations) {
        Qcn n({"x", "y", "z"});
        n.set(0, 1, xy);
        n.set(0, 2, xz);
        n.set(1, 2, yz);
        bool witnessed = false;
        oracle::for_each_placement(3, [&](const std::vector<oracle::Span>& p) {
          witnessed = witnessed || (oracle::relation_of(p[0], p[1]) == xy && oracle::relation_of(p[0], p[2]) == xz &&
                                    oracle::relation_of(p[1], p[2]) == yz);
        });
        const bool consistent = close_qcn(n).consistent;
        c.expect(consistent == realize_small(n).has_value(), "close vs realize_small on " + serialize(n));
        c.expect(consistent == witnessed, "close vs placements on " + serialize(n));
      }
}

void indu(Check& c) {
  c.expect(valid_atoms().size() == 25, "valid atom count " + std::to_string(valid_atoms().size()));
  for (auto a : valid_atoms())
    for (auto b : valid_atoms()) {
      const Relation projected = compose(InduRelation(a), InduRelation(b)).allen();
      c.expect(projected.subset_of(compose(a.allen, b.allen)), "projection within Allen for " + to_string(a));
    }
  for (auto r1 : kAllBaseRelations)
    for (auto r2 : kAllBaseRelations)
      c.expect(compose(InduRelation::lift(r1), InduRelation::lift(r2)).allen() == compose(r1, r2),
               "lifted composition " + std::string(name_of(r1)) + " o " + std::string(name_of(r2)));
}

void metric(Check& c) {
  const HybridNetwork sim = base_network("simmer.rcp");
  const auto pts = sim.points_of("simmer");
  Stp stp;
  stp.add_point(TimePoint::start_of("simmer"));
  stp.add_point(TimePoint::end_of("simmer"));
  stp.constrain(0, 1, sim.stp().window(pts.start, pts.end));
  c.expect(stp.window(0, 1) == Window::closed(120, 180), "simmer window " + to_string(stp.window(0, 1)));
  const auto closed = stp_close(stp);
  c.expect(closed.consistent, "simmer consistent");
  c.expect(closed.network == stp, "simmer already minimal");

  Stp cycle;
  for (auto id : {"p", "q", "r"}) cycle.add_point(TimePoint::anonymous(id));
  cycle.constrain("p", "q", Window::closed(10, 20));
  cycle.constrain("q", "r", Window::closed(10, 20));
  cycle.constrain("r", "p", Window::closed(-15, 0));
  c.expect(!stp_close(cycle).consistent, "negative cycle detected");

  std::mt19937 rng(1997);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 2 + rng() % 4;
    Stp s;
    for (std::size_t i = 0; i < n; ++i) s.add_point(TimePoint::anonymous("p" + std::to_string(i)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (rng() % 3) {
          const int lo = static_cast<int>(rng() % 11) - 5;
          s.constrain(i, j, Window::closed(Rational(lo, 1 + static_cast<int>(rng() % 3)), lo + static_cast<int>(rng() % 7)));
        }
    const auto r = stp_close(s);
    c.expect(r.consistent == oracle::brute_consistent(s), "STP consistency");
    if (!r.consistent) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        c.expect(r.network.distance(i, j) == oracle::brute_shortest(s, i, j), "minimal window");
  }
}

void hybrid(Check& c) {
  HybridNetwork h;
  h.add_interval({"bake"});
  h.add_interval({"is_brown", IntervalKind::state});
  h.relate("bake", "is_brown", B::m);
  h.duration("bake", Window(Bound::open(0), Bound::closed(25)));
  const auto closed = hybrid_close(h);
  c.expect(closed.consistent, "mixed duration consistent");
  if (closed.consistent) {
    const auto bake = closed.network.points_of("bake");
    c.expect(closed.network.stp().window(bake.start, bake.end) == Window(Bound::open(0), Bound::closed(25)),
             "bake window kept");
    c.expect(closed.network.qcn().at("bake", "is_brown") == Relation(B::m), "bake meets is_brown");
  }

  std::mt19937 rng(2009);
  for (int k = 0; k < 300; ++k) {
    HybridNetwork q;
    for (auto id : {"a", "b", "c", "d"}) q.add_interval({id});
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j)
        if (rng() % 2) {
          Relation r;
          for (unsigned a = 0, n = 1 + rng() % 4; a < n; ++a) r |= kAllBaseRelations[rng() % 13];
          q.qcn().set(i, j, r);
        }
    const auto allen = close_qcn(q.qcn());
    const auto mixed = hybrid_close(q);
    if (allen.consistent && mixed.consistent)
      c.expect(mixed.network.qcn() == allen.network, "qualitative-only hybrid closure equals Allen closure");
    else
      c.expect(!mixed.consistent && !atomic_consistent(q.qcn()), "hybrid and Allen disagree on consistency");
  }
}

void timeml(Check& c) {
  const AnnotatedDoc d = parse_timeml(data_file("snippet.tml"));
  c.expect(d.tlinks.size() == 1, "one TLINK");
  const Qcn q = doc_to_qcn(d);
  c.expect(q.size() == 2, "two intervals");
  if (q.size() == 2) c.expect(q.at("e1", "e2") == Relation(B::di), "e1 {di} e2");
  c.expect(close_qcn(q).consistent && realize_small(q).has_value(), "snippet consistent");
}

// ---------------------------------------------------------- expressiveness

using Cell = std::function<void(Check&)>;

void consistent_scenarios(Check& c, const std::string& dsl, const std::string& what) {
  for (const auto& s : encode_recipe(parse_recipe_dsl(dsl)))
    c.expect(hybrid_close(s.network).consistent && hybrid_consistent(s.network), what + " (" + s.label + ")");
}

const char* kTimemlHead =
    "<EVENT eid=\"e1\" class=\"OCCURRENCE\">Bake</EVENT><MAKEINSTANCE eiid=\"ei1\" eventID=\"e1\"/> "
    "<EVENT eid=\"e2\" class=\"OCCURRENCE\">stir</EVENT><MAKEINSTANCE eiid=\"ei2\" eventID=\"e2\"/> "
    "<EVENT eid=\"e3\" class=\"STATE\">brown</EVENT><MAKEINSTANCE eiid=\"ei3\" eventID=\"e3\"/> ";

std::string tlink(const char* a, const char* rel, const char* b, bool to_time = false) {
  return std::string("<TLINK eventInstanceID=\"") + a + (to_time ? "\" relatedToTime=\"" : "\" relatedToEventInstance=\"") +
         b + "\" relType=\"" + rel + "\"/>";
}

TimemlEncoding timeml_of(const std::string& extra) { return doc_to_hybrid(parse_timeml(std::string(kTimemlHead) + extra)); }

void timeml_cell(Check& c, const std::string& extra, const std::string& what,
                 const std::function<bool(const TimemlEncoding&)>& holds) {
  const TimemlEncoding t = timeml_of(extra);
  c.expect(hybrid_consistent(t.network), what + " consistent");
  c.expect(holds(t), what + " encoded");
}

InduNetwork indu_of(std::initializer_list<std::tuple<const char*, const char*, InduRelation>> cs,
                    std::initializer_list<const char*> ids) {
  InduNetwork n(std::vector<std::string>(ids.begin(), ids.end()));
  for (const auto& [a, b, r] : cs) n.constrain(n.index(a), n.index(b), r);
  return n;
}

void indu_cell(Check& c, const InduNetwork& n, const std::string& what) {
  const auto closed = indu_close(n);
  c.expect(closed.consistent, what + " closes");
  c.expect(closed.consistent && atomic_consistent(project_allen(closed.network)), what + " has an Allen scenario");
}

Stp stp_of(std::initializer_list<const char*> intervals) {
  Stp s;
  for (auto id : intervals) {
    s.add_point(TimePoint::start_of(id));
    s.add_point(TimePoint::end_of(id));
    s.constrain("start(" + std::string(id) + ")", "end(" + std::string(id) + ")", Window::positive());
  }
  return s;
}

void stp_cell(Check& c, const Stp& s, const std::string& what) { c.expect(stp_close(s).consistent, what); }

bool has_kind(const WorkflowGraph& w, WorkflowNode::Kind k) {
  return std::any_of(w.nodes.begin(), w.nodes.end(), [&](auto& n) { return n.kind == k; });
}

WorkflowGraph workflow_of(const std::string& dsl) {
  const Recipe r = parse_recipe_dsl(dsl);
  return to_workflow(encode_recipe(r), r.markers);
}

const char* kUntil = "recipe \"u\"\nstep bake \"Bake.\" until \"top is brown\"\nstep serve \"Serve.\"\n";
const char* kChain = "recipe \"c\"\nstep a \"A.\"\nstep b \"B.\"\nstep c \"C.\"\n";
const char* kPartial = "recipe \"p\"\nprelim chop \"chopped\"\nprelim peel \"peeled\"\nstep fry \"Fry.\"\n";
const char* kMeanwhile = "recipe \"m\"\nstep boil \"Boil.\"\nstep chop \"Meanwhile chop.\" meanwhile\n";

struct Column {
  const char* name;
  std::vector<std::pair<Phenomenon, Cell>> cells;
};

std::vector<Column> expressiveness_columns() {
  using P = Phenomenon;
  using S = DurSign;
  std::vector<Column> cols;

  cols.push_back({"allen",
                  {
                      {P::qualitative_duration, [](Check& c) { consistent_scenarios(c, kUntil, "until state"); }},
                      {P::total_order, [](Check& c) { consistent_scenarios(c, kChain, "chain"); }},
                      {P::partial_order, [](Check& c) { consistent_scenarios(c, kPartial, "preliminaries"); }},
                      {P::simultaneity, [](Check& c) { consistent_scenarios(c, kMeanwhile, "meanwhile"); }},
                  }});

  // Durations are compared with reference intervals of known length.
  cols.push_back(
      {"indu",
       {
           {P::qualitative_duration,
            [](Check& c) {
              indu_cell(c, indu_of({{"bake", "brown", InduRelation::lift(B::m)}}, {"bake", "brown"}), "until state");
            }},
           {P::precise_quantitative_duration,
            [](Check& c) {
              indu_cell(c,
                        indu_of({{"bake", "hour", InduRelation::with_signs({S::eq})},
                                 {"bake", "rest", InduRelation::lift(B::b)}},
                                {"bake", "hour", "rest"}),
                        "same length as an hour");
            }},
           {P::imprecise_quantitative_duration,
            [](Check& c) {
              indu_cell(c,
                        indu_of({{"simmer", "two_hours", InduRelation::with_signs({S::gt, S::eq})},
                                 {"simmer", "three_hours", InduRelation::with_signs({S::lt, S::eq})},
                                 {"two_hours", "three_hours", InduRelation::with_signs({S::lt})}},
                                {"simmer", "two_hours", "three_hours"}),
                        "between two references");
            }},
           {P::total_order,
            [](Check& c) {
              indu_cell(c,
                        indu_of({{"a", "b", InduRelation::lift({B::b, B::m})}, {"b", "c", InduRelation::lift({B::b, B::m})}},
                                {"a", "b", "c"}),
                        "chain");
            }},
           {P::partial_order,
            [](Check& c) {
              indu_cell(c, indu_of({{"a", "c", InduRelation::lift(B::b)}, {"b", "c", InduRelation::lift(B::b)}}, {"a", "b", "c"}),
                        "two before one");
            }},
           {P::simultaneity,
            [](Check& c) {
              indu_cell(c, indu_of({{"chop", "boil", InduRelation::lift({B::d, B::f})}}, {"boil", "chop"}), "meanwhile");
            }},
       }});

  cols.push_back({"distance",
                  {
                      {P::qualitative_duration,
                       [](Check& c) {
                         Stp s = stp_of({"bake", "brown"});
                         s.constrain("end(bake)", "start(brown)", Window::exactly(0));
                         stp_cell(c, s, "ends when the state starts");
                       }},
                      {P::precise_quantitative_duration,
                       [](Check& c) {
                         Stp s = stp_of({"bake"});
                         s.constrain("start(bake)", "end(bake)", Window::exactly(60));
                         stp_cell(c, s, "one hour");
                       }},
                      {P::imprecise_quantitative_duration,
                       [](Check& c) {
                         Stp s = stp_of({"simmer"});
                         s.constrain("start(simmer)", "end(simmer)", encode_duration("2-3 hours"));
                         stp_cell(c, s, "two to three hours");
                       }},
                      {P::total_order,
                       [](Check& c) {
                         Stp s = stp_of({"a", "b", "c"});
                         s.constrain("end(a)", "start(b)", Window(Bound::closed(0), Bound::unbounded()));
                         s.constrain("end(b)", "start(c)", Window(Bound::closed(0), Bound::unbounded()));
                         stp_cell(c, s, "chain");
                       }},
                      {P::partial_order,
                       [](Check& c) {
                         Stp s = stp_of({"a", "b", "c"});
                         s.constrain("end(a)", "start(c)", Window(Bound::open(0), Bound::unbounded()));
                         s.constrain("end(b)", "start(c)", Window(Bound::open(0), Bound::unbounded()));
                         stp_cell(c, s, "two before one");
                       }},
                      {P::simultaneity,
                       [](Check& c) {
                         Stp s = stp_of({"boil", "chop"});
                         s.constrain("start(boil)", "start(chop)", Window(Bound::open(0), Bound::unbounded()));
                         s.constrain("end(chop)", "end(boil)", Window(Bound::closed(0), Bound::unbounded()));
                         stp_cell(c, s, "during");
                       }},
                  }});

  cols.push_back(
      {"timeml",
       {
           {P::qualitative_duration,
            [](Check& c) {
              timeml_cell(c, tlink("ei1", "IBEFORE", "ei3"), "until state",
                          [](auto& t) { return t.network.qcn().at("e1", "e3") == Relation(B::m); });
            }},
           {P::precise_quantitative_duration,
            [](Check& c) {
              timeml_cell(c, "<TIMEX3 tid=\"t1\" type=\"DURATION\" value=\"PT1H\">1hr</TIMEX3>" + tlink("ei1", "DURING", "t1", true),
                          "one hour", [](auto& t) {
                            const auto closed = hybrid_close(t.network);
                            const auto p = closed.network.points_of("e1");
                            return closed.consistent && closed.network.stp().window(p.start, p.end) == Window::exactly(60);
                          });
            }},
           {P::total_order,
            [](Check& c) {
              timeml_cell(c, tlink("ei1", "BEFORE", "ei2") + tlink("ei2", "BEFORE", "ei3"), "chain",
                          [](auto& t) { return hybrid_close(t.network).network.qcn().at("e1", "e3") == Relation(B::b); });
            }},
           {P::partial_order,
            [](Check& c) {
              timeml_cell(c, tlink("ei1", "BEFORE", "ei3") + tlink("ei2", "BEFORE", "ei3"), "two before one",
                          [](auto& t) { return t.network.qcn().at("e1", "e2") == Relation::full(); });
            }},
           {P::simultaneity,
            [](Check& c) {
              const AnnotatedDoc d = parse_timeml(data_file("snippet.tml"));
              c.expect(doc_to_qcn(d).at("e2", "e1") == Relation(B::d), "meanwhile is included");
              c.expect(hybrid_consistent(doc_to_hybrid(d).network), "meanwhile consistent");
            }},
           {P::indeterminate_repetition,
            [](Check& c) {
              timeml_cell(c, "<TIMEX3 tid=\"t1\" type=\"SET\" value=\"R\">repeatedly</TIMEX3>" + tlink("ei2", "DURING", "t1", true),
                          "repeated", [](auto& t) {
                            return t.markers.size() == 1 && t.markers[0].mode == RepetitionMarker::Mode::count;
                          });
            }},
           {P::sporadic_repetition,
            [](Check& c) {
              timeml_cell(c,
                          "<TIMEX3 tid=\"t1\" type=\"SET\" value=\"R\">occasionally</TIMEX3>" +
                              tlink("ei2", "DURING", "t1", true) + tlink("ei2", "IS_INCLUDED", "ei1"),
                          "occasionally", [](auto& t) {
                            return t.markers.size() == 1 && t.markers[0].mode == RepetitionMarker::Mode::sporadic &&
                                   t.network.interval(*t.network.find_interval("e2")).sporadic;
                          });
            }},
       }});

  cols.push_back(
      {"workflow",
       {
           {P::qualitative_duration,
            [](Check& c) {
              const WorkflowGraph w = workflow_of(std::string(kUntil) + "repeat bake until \"top is brown\"\n");
              c.expect(w.node("loop_bake") && w.node("loop_bake")->guard == "until top is brown", "guarded loop");
            }},
           {P::total_order,
            [](Check& c) {
              const WorkflowGraph w = workflow_of(kChain);
              c.expect(w.successors("a") == std::vector<std::string>{"b"} && w.successors("b") == std::vector<std::string>{"c"},
                       "sequence");
            }},
           {P::partial_order,
            [](Check& c) { c.expect(has_kind(workflow_of(kPartial), WorkflowNode::Kind::and_split), "and-split"); }},
           {P::indeterminate_repetition,
            [](Check& c) {
              const WorkflowGraph w = workflow_of(std::string(kChain) + "repeat b until \"it is smooth\"\n");
              c.expect(w.node("loop_b") && w.node("loop_b")->mode == RepetitionMarker::Mode::count, "count loop");
            }},
           {P::alternation,
            [](Check& c) {
              const WorkflowGraph w = workflow_of(std::string(kChain) + "alternate a with b\n");
              c.expect(w.node("loop_a") && w.node("loop_a")->body.size() == 2, "alternation loop");
            }},
           {P::sporadic_repetition,
            [](Check& c) {
              const WorkflowGraph w = workflow_of(data_file("simmer.rcp"));
              c.expect(has_kind(w, WorkflowNode::Kind::no_op) && w.node("loop_stir"), "loop with a no-op");
            }},
           {P::exclusive_disjunction,
            [](Check& c) {
              c.expect(has_kind(workflow_of(data_file("chilli.rcp")), WorkflowNode::Kind::xor_split), "xor-split");
            }},
       }});
  return cols;
}

void expressiveness(Check& c) {
  std::size_t cells = 0;
  for (const auto& col : expressiveness_columns())
    for (const auto& [phenomenon, cell] : col.cells) {
      Check one;
      try {
        cell(one);
      } catch (const std::exception& e) {
        one.expect(false, e.what());
      }
      ++cells;
      c.count += one.count;
      for (const auto& f : one.failures)
        c.failures.push_back(std::string(col.name) + "/" + std::string(name_of(phenomenon)) + ": " + f);
    }
  c.expect(cells == 30, "expected 30 cells, built " + std::to_string(cells));
}

void adaptation(Check& c) {
  const Recipe r = recipe("lutheran.rcp");
  const DomainKnowledge k = parse_knowledge_dsl(data_file("lentils.rcp"));
  const TaggedNetwork t = prepare_adaptation(encode_recipe(r)[0].network, k);
  c.expect(!t.skeleton.find_interval("drain_beans"), "bean action removed");
  std::vector<TaggedConstraint> hard;
  for (const auto& x : t.constraints)
    if (x.provenance == Provenance::domain_hard) hard.push_back(x);
  c.expect(hard.size() == 3, "three hard constraints");
  const RevisionResult rev = revise(t);
  c.expect(rev.relaxed.empty(), "nothing relaxed");
  c.expect(rev.retained.size() + hard.size() == t.constraints.size(), "every soft constraint retained");
  const auto closed = hybrid_close(rev.network);
  c.expect(closed.consistent, "revised network consistent");
  for (const auto& x : hard) {
    if (x.layer == Layer::allen) {
      c.expect(closed.network.qcn().at(x.from, x.to).subset_of(x.relation), "hard " + x.id + " kept");
    } else {
      const auto& s = closed.network.stp();
      const Window w = s.window(s.index(x.from), s.index(x.to));
      c.expect(w.intersect(x.window) == w, "hard " + x.id + " kept");
    }
  }
  const auto edits = adapt_text_edits(rev, r);
  c.expect(!edits.empty(), "edit list non-empty");
  c.expect(serialize(edits) == serialize(adapt_text_edits(revise(prepare_adaptation(encode_recipe(r)[0].network, k)), r)),
           "edit list deterministic");

  // Conflict fixtures against exhaustive subset enumeration.
  std::mt19937 rng(2010);
  const std::vector<std::string> ids{"p", "q", "r", "s"};
  int conflicts = 0;
  for (int round = 0; round < 200; ++round) {
    HybridNetwork skeleton;
    for (const auto& id : ids) skeleton.add_interval({id});
    std::vector<TaggedConstraint> soft, hard_cs;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        const auto roll = rng() % 5;
        if (roll == 4) continue;
        Relation rel;
        for (unsigned a = 0, n = 1 + rng() % 2; a < n; ++a) rel |= kAllBaseRelations[rng() % 13];
        if (roll == 0) {
          auto h = tag_allen(ids[i], ids[j], rel, Provenance::domain_hard);
          h.id += ":hard";
          hard_cs.push_back(h);
        } else {
          soft.push_back(tag_allen(ids[i], ids[j], rel, Provenance::recipe_soft));
        }
      }
    auto placeable = [&](const std::vector<TaggedConstraint>& cs) {
      Qcn q(ids);
      for (const auto& x : cs)
        if (q.constrain(q.index(x.from), q.index(x.to), x.relation).is_empty()) return false;
      return realize_small(q).has_value();
    };
    if (!placeable(hard_cs)) continue;
    std::size_t best = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << soft.size()); ++mask) {
      std::vector<TaggedConstraint> cs = hard_cs;
      for (std::size_t i = 0; i < soft.size(); ++i)
        if ((mask >> i) & 1) cs.push_back(soft[i]);
      if (cs.size() - hard_cs.size() > best && placeable(cs)) best = cs.size() - hard_cs.size();
    }
    std::vector<TaggedConstraint> all = soft;
    all.insert(all.end(), hard_cs.begin(), hard_cs.end());
    std::sort(all.begin(), all.end(), [](auto& a, auto& b) { return a.id < b.id; });
    const RevisionResult res = revise({skeleton, all, {}, {}});
    conflicts += res.relaxed.empty() ? 0 : 1;
    c.expect(res.retained.size() == best, "round " + std::to_string(round) + " keeps " +
                                              std::to_string(res.retained.size()) + " of best " + std::to_string(best));
    std::vector<TaggedConstraint> kept = hard_cs;
    for (const auto& x : soft)
      if (std::find(res.retained.begin(), res.retained.end(), x.id) != res.retained.end()) kept.push_back(x);
    c.expect(placeable(kept), "retained set consistent");
  }
  c.expect(conflicts >= 20, "too few conflicting fixtures: " + std::to_string(conflicts));
}

void workflow(Check& c) {
  const Recipe r = recipe("lutheran.rcp");
  const WorkflowGraph w = to_workflow(encode_recipe(r), r.markers);
  // The band before "brown": one split whose branches are exactly the
  // preliminaries, joined before brown_hamburger's band.
  std::string prelim_split;
  for (const auto& n : w.nodes) {
    if (n.kind != WorkflowNode::Kind::and_split) continue;
    auto s = w.successors(n.id);
    std::sort(s.begin(), s.end());
    if (s == std::vector<std::string>{"drain_beans", "mince_garlic", "slice_onion"}) prelim_split = n.id;
  }
  c.expect(!prelim_split.empty(), "one and-band holds the three preliminaries");
  std::string brown_split;
  for (const auto& p : w.predecessors("brown_hamburger")) brown_split = p;
  const WorkflowNode* bs = w.node(brown_split);
  c.expect(bs && bs->kind == WorkflowNode::Kind::and_split, "brown starts an and-band");
  if (bs) {
    auto s = w.successors(brown_split);
    std::sort(s.begin(), s.end());
    c.expect(s == std::vector<std::string>{"brown_hamburger", "prepare_pasta"}, "prepare pasta parallel to brown");
    bool prelims_first = false;
    for (const auto& p : w.predecessors(brown_split))
      for (const auto& q : w.predecessors(p))
        prelims_first = prelims_first || q == "drain_beans";
    c.expect(prelims_first, "preliminaries joined before brown");
  }
  const std::string golden = read_text(std::string(PROCTIME_TEST_GOLDEN) + "/lutheran.dot");
  c.expect(emit_dot(w) == golden, "emit_dot equals the golden file byte for byte");
}

struct Criterion {
  const char* name;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"composition table equals the endpoint oracle", composition_table},
      {"algebra laws", algebra_laws},
      {"worked recipe network", worked_network},
      {"closure agrees with the realization oracle on atomic 3-interval networks", closure_vs_oracle},
      {"INDU atoms and projection", indu},
      {"metric windows", metric},
      {"hybrid networks", hybrid},
      {"TimeML snippet", timeml},
      {"expressiveness of the implemented formalisms", expressiveness},
      {"adaptation by revision", adaptation},
      {"workflow export", workflow},
  };
  int failed = 0, number = 0;
  for (const auto& criterion : criteria) {
    ++number;
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    const bool ok = c.failures.empty();
    failed += ok ? 0 : 1;
    std::cout << (ok ? "PASS" : "FAIL") << " " << number << " " << criterion.name << " (" << c.count << " checks, "
              << ms << " ms)\n";
    for (const auto& f : c.failures) std::cout << "     " << f << "\n";
    if (number == 9)
      std::cout << "SKIP 9 non-convex and cyclic interval columns: formalisms not implemented, out of scope\n";
  }
  return failed == 0 ? 0 : 1;
}

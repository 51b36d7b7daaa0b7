// Line-oriented recipe and domain-knowledge files.
//
//   recipe "<title>"                      knowledge "<name>"
//   prelim <id> "<text>"                  anchor <id>
//   step <id> "<text>" [meanwhile] [for <duration>] [until "<state>"]
//                      [last <duration> of <id>]
//   timer <id> <duration>                 remove <id>
//   rel <id> {atoms} <id>                 rel <id> then|before|meanwhile|sametime <id>
//   sporadic <id> in <id>
//   alternate <id> with <id>
//   repeat <id> until "<state>"           repeat <id> <n>
//   alt <branch> ["<guard>"] {
//     ...
//   }
//
// One directive per line; `#` starts a comment outside quotes. Recipe files
// take every directive but anchor and remove; knowledge files take step (for
// and until only), timer, rel, anchor and remove.
#pragma once

#include <string>
#include <string_view>

#include "proctime/adaptation.hpp"
#include "proctime/recipe.hpp"

namespace proctime {

/// Errors are ParseErrors whose position is the 1-based line number.
Recipe parse_recipe_dsl(std::string_view text);

/// Canonical text: header, base directives grouped by kind, then one block
/// per alternative.
std::string serialize(const Recipe& r);

/// Knowledge steps are not chained by text order; only their stated
/// constraints count, all of them hard.
DomainKnowledge parse_knowledge_dsl(std::string_view text, const EncodingOptions& options = {});

}  // namespace proctime

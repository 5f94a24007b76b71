// Copyright 2026 The Temporalex Authors
// SPDX-License-Identifier: Apache-2.0

#include "temporalex/agent.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "temporalex/text.hpp"

namespace temporalex {
namespace {

using json = nlohmann::json;

constexpr std::array<std::string_view, 5> kTags = {"think", "plan", "tool_call", "answer",
                                                   "tool_response"};

struct TagToken {
  std::string_view name;
  bool closing;
  std::size_t begin;
  std::size_t end;
};

std::vector<TagToken> scan_tags(std::string_view text) {
  std::vector<TagToken> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '<') continue;
    const bool closing = i + 1 < text.size() && text[i + 1] == '/';
    const std::size_t name_at = i + (closing ? 2 : 1);
    for (auto tag : kTags) {
      if (text.substr(name_at).starts_with(tag) && name_at + tag.size() < text.size() &&
          text[name_at + tag.size()] == '>') {
        out.push_back({tag, closing, i, name_at + tag.size() + 1});
        i = name_at + tag.size();
        break;
      }
    }
  }
  return out;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

struct Block {
  std::string_view name;
  std::string content;
};

FormatDiagnosis diag(FormatError e, std::string detail) { return {e, std::move(detail)}; }

std::string open_tag(std::string_view name) { return "<" + std::string(name) + ">"; }
std::string close_tag(std::string_view name) { return "</" + std::string(name) + ">"; }

std::string wrap(std::string_view name, std::string_view content) {
  return open_tag(name) + std::string(content) + close_tag(name);
}

std::variant<std::vector<Block>, FormatDiagnosis> split_blocks(std::string_view text) {
  const auto tokens = scan_tags(text);

  std::map<std::string_view, int> depth;
  for (const auto& t : tokens) {
    int& d = depth[t.name];
    if (t.closing) {
      if (d == 0) {
        return diag(FormatError::UnbalancedTags, close_tag(t.name) + " without opening tag");
      }
      --d;
    } else {
      ++d;
    }
  }
  for (const auto& [name, d] : depth) {
    if (d != 0) return diag(FormatError::UnbalancedTags, open_tag(name) + " is never closed");
  }

  std::vector<Block> blocks;
  std::optional<TagToken> open;
  std::size_t cursor = 0;
  for (const auto& t : tokens) {
    if (!open) {
      if (t.closing) {
        return diag(FormatError::NestedTags, close_tag(t.name) + " closes nothing");
      }
      if (!blank(text.substr(cursor, t.begin - cursor))) {
        return diag(FormatError::TextOutsideTags, "text before " + open_tag(t.name));
      }
      open = t;
      continue;
    }
    if (!t.closing) {
      return diag(FormatError::NestedTags,
                  open_tag(t.name) + " inside " + open_tag(open->name));
    }
    if (t.name != open->name) {
      return diag(FormatError::NestedTags,
                  close_tag(t.name) + " crosses " + open_tag(open->name));
    }
    blocks.push_back({t.name, std::string(text.substr(open->end, t.begin - open->end))});
    cursor = t.end;
    open.reset();
  }
  if (!blank(text.substr(cursor))) {
    return diag(FormatError::TextOutsideTags,
                blocks.empty() ? "output has no tagged blocks" : "text after the last block");
  }
  return blocks;
}

}  // namespace

std::string_view task_name(TaskKind kind) {
  switch (kind) {
    case TaskKind::LAR: return "LAR";
    case TaskKind::LCS: return "LCS";
    case TaskKind::KQA: return "KQA";
    case TaskKind::LAP: return "LAP";
    case TaskKind::CCP: return "CCP";
    case TaskKind::PTP: return "PTP";
    case TaskKind::LCA: return "LCA";
    case TaskKind::OOD_MC: return "OOD_MC";
  }
  return "?";
}

std::optional<TaskKind> parse_task(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (auto kind : {TaskKind::LAR, TaskKind::LCS, TaskKind::KQA, TaskKind::LAP,
                    TaskKind::CCP, TaskKind::PTP, TaskKind::LCA, TaskKind::OOD_MC}) {
    if (task_name(kind) == upper) return kind;
  }
  return std::nullopt;
}

ActionKind kind_of(const Action& action) { return static_cast<ActionKind>(action.index()); }

std::string_view action_name(ActionKind kind) {
  switch (kind) {
    case ActionKind::Plan: return "plan";
    case ActionKind::ToolCall: return "tool_call";
    case ActionKind::Answer: return "answer";
  }
  return "?";
}

std::string_view format_error_name(FormatError e) {
  switch (e) {
    case FormatError::MissingThink: return "missing_think";
    case FormatError::EmptyThink: return "empty_think";
    case FormatError::UnbalancedTags: return "unbalanced_tags";
    case FormatError::NestedTags: return "nested_tags";
    case FormatError::TextOutsideTags: return "text_outside_tags";
    case FormatError::MissingFirstRoundPlan: return "missing_first_round_plan";
    case FormatError::MissingAction: return "missing_action";
    case FormatError::UnexpectedTag: return "unexpected_tag";
    case FormatError::MalformedToolRequest: return "malformed_tool_request";
    case FormatError::ResponseTooLong: return "response_too_long";
  }
  return "?";
}

ParseResult parse_agent_output(std::string_view text, std::size_t round_index) {
  auto split = split_blocks(text);
  if (auto* d = std::get_if<FormatDiagnosis>(&split)) return *d;
  auto& blocks = std::get<std::vector<Block>>(split);

  if (blocks.empty() || blocks[0].name != "think") {
    return diag(FormatError::MissingThink, "every round must open with <think>");
  }
  if (trim(blocks[0].content).empty()) {
    return diag(FormatError::EmptyThink, "<think> block is empty");
  }
  Step step{blocks[0].content, std::nullopt, PlanAction{}, std::nullopt};

  std::size_t i = 1;
  std::optional<std::string> plan;
  if (i < blocks.size() && blocks[i].name == "plan") plan = blocks[i++].content;

  if (round_index == 0 && !plan) {
    return diag(FormatError::MissingFirstRoundPlan, "the first round needs <think> then <plan>");
  }

  std::optional<Action> action;
  if (i < blocks.size()) {
    const auto& b = blocks[i];
    if (b.name == "tool_call") {
      try {
        action = ToolCallAction{parse_tool_request(b.content)};
      } catch (const ToolRequestError& e) {
        return diag(FormatError::MalformedToolRequest, e.what());
      }
      ++i;
    } else if (b.name == "answer" && round_index > 0) {
      action = AnswerAction{b.content};
      ++i;
    }
  }
  if (i < blocks.size()) {
    return diag(FormatError::UnexpectedTag,
                open_tag(blocks[i].name) + " is not allowed here in round " +
                    std::to_string(round_index));
  }

  if (action) {
    step.action = std::move(*action);
    step.plan = std::move(plan);
  } else if (plan) {
    step.action = PlanAction{std::move(*plan)};
  } else {
    return diag(FormatError::MissingAction, "<think> must be followed by a plan, tool call or answer");
  }
  return step;
}

std::string serialize_step(const Step& step) {
  std::string out = wrap("think", step.think);
  if (step.plan) out += "\n" + wrap("plan", *step.plan);
  out += "\n";
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, PlanAction>) {
          out += wrap("plan", a.text);
        } else if constexpr (std::is_same_v<T, ToolCallAction>) {
          out += wrap("tool_call", to_wire(a.request));
        } else {
          out += wrap("answer", a.text);
        }
      },
      step.action);
  return out;
}

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::InProgress: return "in_progress";
    case Termination::Answered: return "answered";
    case Termination::MaxTurns: return "max_turns";
    case Termination::MalformedOutput: return "malformed_output";
  }
  return "?";
}

void RolloutLimits::validate() const {
  if (max_turns == 0) throw std::invalid_argument("max_turns must be positive");
  if (max_context_length == 0) throw std::invalid_argument("max_context_length must be positive");
  if (max_response_length == 0) throw std::invalid_argument("max_response_length must be positive");
}

std::string render_question(const BenchmarkItem& item) {
  std::string out = "Question: " + item.question + "\n";
  if (!item.options.empty()) {
    out += "Options:\n";
    for (const auto& [letter, text] : item.options) out += letter + ": " + text + "\n";
  }
  if (item.temporal_context) out += "Temporal context: " + *item.temporal_context + "\n";
  return out;
}

std::string render_state(const Trajectory& prefix, const RolloutLimits& limits) {
  std::vector<std::optional<std::string>> responses;
  for (const auto& s : prefix.steps) responses.push_back(s.tool_response);

  auto render = [&] {
    std::string out = prefix.system_prompt + "\n\n" + prefix.query;
    for (std::size_t i = 0; i < prefix.steps.size(); ++i) {
      out += "\n" + serialize_step(prefix.steps[i]);
      if (responses[i]) out += "\n" + wrap("tool_response", *responses[i]);
    }
    return out;
  };

  std::string out = render();
  for (std::size_t i = 0; i < responses.size(); ++i) {
    if (codepoint_count(out) <= limits.max_context_length) break;
    if (!responses[i] || *responses[i] == kTruncationMarker) continue;
    responses[i] = std::string(kTruncationMarker);
    out = render();
  }
  return out;
}

bool validate_format(const Trajectory& trajectory) {
  if (trajectory.malformed_output || trajectory.steps.empty()) return false;
  for (std::size_t i = 0; i < trajectory.steps.size(); ++i) {
    const auto& step = trajectory.steps[i];
    const bool last = i + 1 == trajectory.steps.size();
    const bool answer = kind_of(step.action) == ActionKind::Answer;
    if (answer != last) return false;
    auto reparsed = parse_agent_output(serialize_step(step), i);
    auto* parsed = std::get_if<Step>(&reparsed);
    if (parsed == nullptr) return false;
    if (parsed->think != step.think || parsed->plan != step.plan ||
        !(parsed->action == step.action)) {
      return false;
    }
  }
  return true;
}

std::optional<std::string> extract_answer(const Trajectory& trajectory) {
  if (trajectory.steps.empty()) return std::nullopt;
  const auto* answer = std::get_if<AnswerAction>(&trajectory.steps.back().action);
  if (answer == nullptr) return std::nullopt;
  return trim(answer->text);
}

RolloutError::RolloutError(const std::string& message, Trajectory partial)
    : std::runtime_error(message), partial_(std::move(partial)) {}

std::string default_system_prompt_template() {
  return "You are a legal research agent working on questions about Chinese law. "
         "The current date is {current_date}.\n"
         "Statutes change between amendments, so treat anything you remember as "
         "possibly stale. Base every conclusion on material returned by the tools, and "
         "make sure the statute version you rely on was in force at the time the events "
         "in the question took place.\n"
         "\n"
         "Output format. Each round is a sequence of tagged blocks with nothing but "
         "whitespace between them:\n"
         "- round one: <think>your reasoning</think><plan>the research steps you intend "
         "to take</plan>, optionally followed by a first <tool_call>;\n"
         "- later rounds: <think>...</think>, then an optional revised <plan>, then either "
         "<tool_call>{\"name\": ..., \"arguments\": {...}}</tool_call> or "
         "<answer>final answer</answer>;\n"
         "- the <answer> block ends the task.\n"
         "\n"
         "Tools:\n"
         "- rag_retrieve {\"query\": [strings]}: searches the local statute corpus, which "
         "keeps every historical version of each article. Use it for article text and "
         "named provisions. Put the relevant year in the query.\n"
         "- web_search {\"query\": [strings]}: general web search for commentary, case "
         "analysis and judicial practice.\n"
         "- browse_webpage {\"url_list\": [strings]}: reads pages whose urls appeared in "
         "earlier web_search results.\n"
         "\n"
         "For multiple-choice questions answer with the option letters only.";
}

std::string make_system_prompt(std::string_view prompt_template, Date today) {
  std::string out(prompt_template);
  const std::string_view placeholder = "{current_date}";
  for (auto pos = out.find(placeholder); pos != std::string::npos;
       pos = out.find(placeholder, pos)) {
    out.replace(pos, placeholder.size(), today.to_string());
  }
  return out;
}

Trajectory run_rollout(const BenchmarkItem& item, const Policy& policy,
                       const ToolRegistry& tools, const RolloutOptions& options) {
  options.limits.validate();
  Trajectory trajectory;
  trajectory.id = item.id;
  trajectory.system_prompt = options.system_prompt;
  trajectory.query = render_question(item);
  trajectory.temporal_context = item.temporal_context;

  ToolSession session{item.question, {}};
  for (std::size_t round = 0; round < options.limits.max_turns; ++round) {
    const std::string state = render_state(trajectory, options.limits);
    std::string output;
    try {
      output = policy.generate(PolicyContext{item, trajectory, state, round});
    } catch (const std::exception& e) {
      throw RolloutError(std::string("policy failed: ") + e.what(), trajectory);
    }

    if (codepoint_count(output) > options.limits.max_response_length) {
      trajectory.termination = Termination::MalformedOutput;
      trajectory.malformed_output = std::move(output);
      trajectory.diagnosis = diag(FormatError::ResponseTooLong, "response exceeds max_response_length");
      return trajectory;
    }
    auto parsed = parse_agent_output(output, round);
    if (auto* d = std::get_if<FormatDiagnosis>(&parsed)) {
      trajectory.termination = Termination::MalformedOutput;
      trajectory.malformed_output = std::move(output);
      trajectory.diagnosis = *d;
      return trajectory;
    }
    Step step = std::move(std::get<Step>(parsed));
    if (const auto* call = std::get_if<ToolCallAction>(&step.action)) {
      step.tool_response = tools.dispatch(call->request, session);
    }
    const bool answered = kind_of(step.action) == ActionKind::Answer;
    trajectory.steps.push_back(std::move(step));
    if (answered) {
      trajectory.termination = Termination::Answered;
      return trajectory;
    }
  }
  trajectory.termination = Termination::MaxTurns;
  return trajectory;
}

bool is_temporal_query(std::string_view q) {
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  auto run_end = [&](std::size_t i) {
    while (i < q.size() && digit(q[i])) ++i;
    return i;
  };
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!digit(q[i]) || (i > 0 && digit(q[i - 1]))) continue;
    const std::size_t e = run_end(i);
    if (e - i == 4) {
      const int year = std::stoi(std::string(q.substr(i, 4)));
      if (year >= 1900 && year <= 2099) return true;
      // Full dates count whatever the year.
      if (e < q.size() && (q[e] == '-' || q[e] == '/' || q[e] == '.')) {
        const char sep = q[e];
        const std::size_t me = run_end(e + 1);
        if (me - e - 1 >= 1 && me - e - 1 <= 2 && me < q.size() && q[me] == sep) {
          const std::size_t de = run_end(me + 1);
          if (de - me - 1 >= 1 && de - me - 1 <= 2 &&
              Date::from_ymd(year, std::stoul(std::string(q.substr(e + 1, me - e - 1))),
                             std::stoul(std::string(q.substr(me + 1, de - me - 1))))) {
            return true;
          }
        }
      }
    }
    i = e;
  }
  return false;
}

TemporalQueryCounts count_temporal_queries(const std::vector<Trajectory>& trajectories) {
  TemporalQueryCounts counts;
  for (const auto& t : trajectories) {
    for (const auto& step : t.steps) {
      const auto* call = std::get_if<ToolCallAction>(&step.action);
      if (call == nullptr) continue;
      ToolQueryCount* bucket = nullptr;
      if (call->request.name == kWebSearch) bucket = &counts.web_search;
      if (call->request.name == kRagRetrieve) bucket = &counts.rag_retrieve;
      if (bucket == nullptr) continue;
      const auto& args = call->request.arguments;
      if (!args.is_object() || !args.contains("query") || !args["query"].is_array()) continue;
      for (const auto& q : args["query"]) {
        if (!q.is_string()) continue;
        ++bucket->total;
        if (is_temporal_query(q.get<std::string>())) ++bucket->temporal;
      }
    }
  }
  return counts;
}

json to_json(const Step& step) {
  json action;
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, PlanAction>) {
          action = {{"kind", "plan"}, {"payload", a.text}};
        } else if constexpr (std::is_same_v<T, ToolCallAction>) {
          action = {{"kind", "tool_call"},
                    {"payload", {{"name", a.request.name}, {"arguments", a.request.arguments}}}};
        } else {
          action = {{"kind", "answer"}, {"payload", a.text}};
        }
      },
      step.action);
  json j = {{"think", step.think}, {"action", std::move(action)}};
  j["plan"] = step.plan ? json(*step.plan) : json();
  j["tool_response"] = step.tool_response ? json(*step.tool_response) : json();
  return j;
}

json to_json(const Trajectory& t) {
  json steps = json::array();
  for (const auto& s : t.steps) steps.push_back(to_json(s));
  json j = {{"id", t.id},
            {"system_prompt", t.system_prompt},
            {"query", t.query},
            {"steps", std::move(steps)},
            {"termination", termination_name(t.termination)}};
  j["t_q"] = t.temporal_context ? json(*t.temporal_context) : json();
  j["reward"] = t.reward ? json(*t.reward) : json();
  j["malformed_output"] = t.malformed_output ? json(*t.malformed_output) : json();
  if (t.diagnosis) {
    j["diagnosis"] = {{"error", format_error_name(t.diagnosis->error)},
                      {"detail", t.diagnosis->detail}};
  } else {
    j["diagnosis"] = nullptr;
  }
  return j;
}

namespace {

std::optional<std::string> optional_string(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<std::string>();
}

Step step_from_json(const json& j) {
  Step step{j.at("think").get<std::string>(), optional_string(j, "plan"), PlanAction{},
            optional_string(j, "tool_response")};
  const auto& action = j.at("action");
  const auto kind = action.at("kind").get<std::string>();
  if (kind == "plan") {
    step.action = PlanAction{action.at("payload").get<std::string>()};
  } else if (kind == "tool_call") {
    const auto& p = action.at("payload");
    step.action = ToolCallAction{{p.at("name").get<std::string>(), p.at("arguments")}};
  } else if (kind == "answer") {
    step.action = AnswerAction{action.at("payload").get<std::string>()};
  } else {
    throw std::invalid_argument("unknown action kind '" + kind + "'");
  }
  return step;
}

}  // namespace

Trajectory trajectory_from_json(const json& j) {
  Trajectory t;
  t.id = j.at("id").get<std::string>();
  t.system_prompt = j.value("system_prompt", "");
  t.query = j.at("query").get<std::string>();
  t.temporal_context = optional_string(j, "t_q");
  for (const auto& s : j.at("steps")) t.steps.push_back(step_from_json(s));
  if (j.contains("reward") && !j["reward"].is_null()) t.reward = j["reward"].get<double>();
  const auto term = j.value("termination", "in_progress");
  for (auto cand : {Termination::InProgress, Termination::Answered, Termination::MaxTurns,
                    Termination::MalformedOutput}) {
    if (termination_name(cand) == term) t.termination = cand;
  }
  t.malformed_output = optional_string(j, "malformed_output");
  if (j.contains("diagnosis") && j["diagnosis"].is_object()) {
    const auto name = j["diagnosis"].at("error").get<std::string>();
    for (int e = 0; e <= static_cast<int>(FormatError::ResponseTooLong); ++e) {
      if (format_error_name(static_cast<FormatError>(e)) == name) {
        t.diagnosis = FormatDiagnosis{static_cast<FormatError>(e),
                                      j["diagnosis"].value("detail", "")};
      }
    }
  }
  return t;
}

json to_json(const BenchmarkItem& item) {
  json j = {{"id", item.id},
            {"task", task_name(item.task)},
            {"question", item.question},
            {"gold", item.gold}};
  j["temporal_context"] = item.temporal_context ? json(*item.temporal_context) : json();
  if (!item.options.empty()) j["options"] = item.options;
  if (!item.answer_phrases.empty()) j["answer_phrases"] = item.answer_phrases;
  if (!item.basis_phrases.empty()) j["basis_phrases"] = item.basis_phrases;
  return j;
}

BenchmarkItem item_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("benchmark item must be an object");
  BenchmarkItem item;
  for (const char* key : {"id", "task", "question", "gold"}) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw std::invalid_argument(std::string("benchmark item needs string field '") + key + "'");
    }
  }
  item.id = j["id"].get<std::string>();
  const auto task = parse_task(j["task"].get<std::string>());
  if (!task) throw std::invalid_argument("unknown task '" + j["task"].get<std::string>() + "'");
  item.task = *task;
  item.question = j["question"].get<std::string>();
  item.gold = j["gold"].get<std::string>();
  if (j.contains("temporal_context") && !j["temporal_context"].is_null()) {
    const auto& tc = j["temporal_context"];
    item.temporal_context = tc.is_number_integer() ? std::to_string(tc.get<long>())
                                                   : tc.get<std::string>();
  }
  if (j.contains("options")) item.options = j["options"].get<std::map<std::string, std::string>>();
  if (j.contains("answer_phrases")) {
    item.answer_phrases = j["answer_phrases"].get<std::vector<std::string>>();
  }
  if (j.contains("basis_phrases")) {
    item.basis_phrases = j["basis_phrases"].get<std::vector<std::string>>();
  }
  return item;
}

std::vector<BenchmarkItem> read_items(std::istream& in) {
  std::vector<BenchmarkItem> items;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      items.push_back(item_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw std::invalid_argument("items line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return items;
}

std::vector<BenchmarkItem> read_items_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_items(in);
}

std::vector<Trajectory> read_trajectories_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<Trajectory> out;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    out.push_back(trajectory_from_json(json::parse(line)));
  }
  return out;
}

void write_trajectories_file(const std::filesystem::path& path,
                             const std::vector<Trajectory>& trajectories) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& t : trajectories) out << to_json(t).dump() << "\n";
}

}  // namespace temporalex

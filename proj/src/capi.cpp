#include "optri.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "diag.hpp"
#include "kernel.hpp"
#include "parser.hpp"
#include "printer.hpp"
#include "report.hpp"
#include "typecheck.hpp"
#include "version.hpp"

using namespace optri;

struct optri_program {
  Program prog;
};

struct optri_universe {
  Universe uni;  // records bound lazily per operation
};

struct optri_result {
  int code = 2;
  std::string jsonText;
  std::string summary;
};

namespace {

char* dupString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void setErr(char** err, const std::string& msg) {
  if (err) *err = dupString(msg);
}

optri_status classify(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return OPTRI_ERR_PARSE;
  if (dynamic_cast<const TypeError*>(&e)) return OPTRI_ERR_TYPE;
  if (dynamic_cast<const UniverseTooLarge*>(&e)) return OPTRI_ERR_UNIVERSE;
  if (dynamic_cast<const UniverseError*>(&e)) return OPTRI_ERR_UNIVERSE;
  if (dynamic_cast<const ScriptError*>(&e)) return OPTRI_ERR_SCRIPT;
  if (dynamic_cast<const InlineError*>(&e)) return OPTRI_ERR_SCRIPT;
  return OPTRI_ERR_INTERNAL;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExecLimits limitsOf(const optri_options* opts) {
  ExecLimits lim;
  if (opts && opts->fuel > 0) lim.fuel = opts->fuel;
  if (opts && opts->depth_bound > 0) lim.depthBound = opts->depth_bound;
  return lim;
}

int jobsOf(const optri_options* opts) { return opts && opts->jobs > 0 ? opts->jobs : 1; }

bool sameDomain(const Domain& a, const Domain& b) {
  return printDomain(a) == printDomain(b) && a.prealloc == b.prealloc && a.aux == b.aux;
}

bool sameRecord(const RecordDecl& a, const RecordDecl& b) {
  if (a.name != b.name || a.fields.size() != b.fields.size()) return false;
  for (size_t i = 0; i < a.fields.size(); ++i)
    if (a.fields[i].name != b.fields[i].name || !sameDomain(a.fields[i].type, b.fields[i].type))
      return false;
  return true;
}

bool sameProc(const ProcDef& a, const ProcDef& b) {
  if (a.name != b.name || a.ret.kind != b.ret.kind || a.ret.record != b.ret.record) return false;
  if (a.formals.size() != b.formals.size() || a.locals.size() != b.locals.size()) return false;
  for (size_t i = 0; i < a.formals.size(); ++i)
    if (a.formals[i].name != b.formals[i].name ||
        !sameDomain(a.formals[i].type, b.formals[i].type))
      return false;
  for (size_t i = 0; i < a.locals.size(); ++i)
    if (a.locals[i].name != b.locals[i].name || !sameDomain(a.locals[i].type, b.locals[i].type))
      return false;
  return equal(a.body, b.body);
}

// Judgment commands take separate .opa files; their declaration blocks are
// merged and must agree on any shared name.
Program mergeDecls(std::initializer_list<const optri_program*> parts) {
  Program merged;
  merged.main = mkSkip();
  for (const optri_program* p : parts) {
    for (auto& r : p->prog.records) {
      const RecordDecl* have = merged.record(r.name);
      if (!have) {
        merged.records.push_back(r);
      } else if (!sameRecord(*have, r)) {
        throw TypeError(r.pos, "conflicting declarations of record '" + r.name + "'");
      }
    }
    for (auto& pd : p->prog.procs) {
      const ProcDef* have = merged.proc(pd.name);
      if (!have) {
        merged.procs.push_back(pd);
      } else if (!sameProc(*have, pd)) {
        throw TypeError(pd.pos, "conflicting declarations of procedure '" + pd.name + "'");
      }
    }
  }
  markRecursion(merged);
  return merged;
}

optri_result* wrapVerdict(const std::string& command, const Verdict& v, const Universe& u,
                          const ExecLimits& lim) {
  auto* r = new optri_result;
  r->code = verdictExitCode(v.status);
  r->jsonText = verdictReport(command, v, u, lim.fuel).dump(2) + "\n";
  r->summary = verdictSummary(v);
  return r;
}

template <typename Fn>
optri_status guarded(char** err, Fn&& fn) {
  try {
    fn();
    return OPTRI_OK;
  } catch (const std::exception& e) {
    setErr(err, e.what());
    return classify(e);
  } catch (...) {
    setErr(err, "unknown error");
    return OPTRI_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

void optri_options_init(optri_options* opts) {
  if (!opts) return;
  opts->fuel = 10000;
  opts->depth_bound = 64;
  opts->jobs = 1;
}

const char* optri_version(void) { return kToolVersion; }

void optri_string_free(char* s) { std::free(s); }

optri_status optri_program_parse(const char* source, optri_program** out, char** err) {
  if (!source || !out) {
    setErr(err, "NULL argument");
    return OPTRI_ERR_ARG;
  }
  return guarded(err, [&] {
    auto* p = new optri_program{parseProgram(source)};
    try {
      typecheckProgram(p->prog, nullptr);
    } catch (...) {
      delete p;
      throw;
    }
    *out = p;
  });
}

optri_status optri_program_parse_file(const char* path, optri_program** out, char** err) {
  if (!path || !out) {
    setErr(err, "NULL argument");
    return OPTRI_ERR_ARG;
  }
  std::string text;
  try {
    text = readFile(path);
  } catch (const std::exception& e) {
    setErr(err, e.what());
    return OPTRI_ERR_IO;
  }
  return optri_program_parse(text.c_str(), out, err);
}

void optri_program_free(optri_program* p) { delete p; }

optri_status optri_program_print(const optri_program* p, char** out) {
  if (!p || !out) return OPTRI_ERR_ARG;
  *out = dupString(printProgram(p->prog));
  return OPTRI_OK;
}

optri_status optri_program_check(const optri_program* p, const optri_universe* u, char** err) {
  if (!p) {
    setErr(err, "NULL argument");
    return OPTRI_ERR_ARG;
  }
  return guarded(err, [&] {
    if (u) {
      Universe uni = u->uni;
      bindRecords(uni, p->prog);
      typecheckProgram(p->prog, &uni);
    } else {
      typecheckProgram(p->prog, nullptr);
    }
  });
}

optri_status optri_universe_parse(const char* json_text, optri_universe** out, char** err) {
  if (!json_text || !out) {
    setErr(err, "NULL argument");
    return OPTRI_ERR_ARG;
  }
  return guarded(err, [&] { *out = new optri_universe{loadUniverse(json_text)}; });
}

optri_status optri_universe_parse_file(const char* path, optri_universe** out, char** err) {
  if (!path || !out) {
    setErr(err, "NULL argument");
    return OPTRI_ERR_ARG;
  }
  std::string text;
  try {
    text = readFile(path);
  } catch (const std::exception& e) {
    setErr(err, e.what());
    return OPTRI_ERR_IO;
  }
  return optri_universe_parse(text.c_str(), out, err);
}

void optri_universe_free(optri_universe* u) { delete u; }

optri_status optri_universe_state_count(const optri_universe* u, const optri_program* p,
                                        unsigned long long* out, char** err) {
  if (!u || !p || !out) {
    setErr(err, "NULL argument");
    return OPTRI_ERR_ARG;
  }
  return guarded(err, [&] {
    Universe uni = u->uni;
    bindRecords(uni, p->prog);
    *out = stateCount(uni);
  });
}

int optri_result_code(const optri_result* r) { return r ? r->code : 2; }

optri_status optri_result_json(const optri_result* r, char** out) {
  if (!r || !out) return OPTRI_ERR_ARG;
  *out = dupString(r->jsonText);
  return OPTRI_OK;
}

optri_status optri_result_summary(const optri_result* r, char** out) {
  if (!r || !out) return OPTRI_ERR_ARG;
  *out = dupString(r->summary);
  return OPTRI_OK;
}

void optri_result_free(optri_result* r) { delete r; }

namespace {

optri_status judgmentCommand(const char* command,
                             std::initializer_list<const optri_program*> programs,
                             const optri_universe* u, const optri_options* opts,
                             optri_result** out, char** err,
                             const std::function<Verdict(const SemanticChecker&, const Program&)>& go) {
  for (auto* p : programs)
    if (!p) {
      setErr(err, "NULL program");
      return OPTRI_ERR_ARG;
    }
  if (!u || !out) {
    setErr(err, "NULL argument");
    return OPTRI_ERR_ARG;
  }
  return guarded(err, [&] {
    Program merged = mergeDecls(programs);
    Universe uni = u->uni;
    bindRecords(uni, merged);
    for (auto* p : programs) typecheckStat(p->prog.main, merged, uni);
    typecheckProgram(merged, &uni);
    ExecLimits lim = limitsOf(opts);
    SemanticChecker checker(ExecContext{&merged, &uni}, lim, jobsOf(opts));
    Verdict v = go(checker, merged);
    *out = wrapVerdict(command, v, uni, lim);
  });
}

}  // namespace

optri_status optri_check_triple(const optri_program* pre, const optri_program* prog,
                                const optri_program* post, const optri_universe* u,
                                const optri_options* opts, optri_result** out, char** err) {
  return judgmentCommand("triple", {pre, prog, post}, u, opts, out, err,
                         [&](const SemanticChecker& c, const Program&) {
                           return c.checkTriple(pre->prog.main, prog->prog.main,
                                                post->prog.main);
                         });
}

optri_status optri_check_ord(const optri_program* left, const optri_program* right,
                             const optri_universe* u, const optri_options* opts,
                             optri_result** out, char** err) {
  return judgmentCommand("ord", {left, right}, u, opts, out, err,
                         [&](const SemanticChecker& c, const Program&) {
                           return c.checkOrd(left->prog.main, right->prog.main);
                         });
}

optri_status optri_check_equiv(const optri_program* left, const optri_program* right,
                               const optri_universe* u, const optri_options* opts,
                               optri_result** out, char** err) {
  return judgmentCommand("equiv", {left, right}, u, opts, out, err,
                         [&](const SemanticChecker& c, const Program&) {
                           return c.checkEquiv(left->prog.main, right->prog.main);
                         });
}

optri_status optri_check_conj(const optri_program* left, const optri_program* base,
                              const char* cond_source, const optri_universe* u,
                              const optri_options* opts, optri_result** out, char** err) {
  if (!cond_source) {
    setErr(err, "NULL condition");
    return OPTRI_ERR_ARG;
  }
  std::string condSrc = cond_source;
  return judgmentCommand("conj", {left, base}, u, opts, out, err,
                         [&, condSrc](const SemanticChecker& c, const Program& merged) {
                           ExprPtr cond = parseExpr(condSrc);
                           typecheckBoolExpr(cond, merged, *c.context().uni);
                           return c.checkConj(left->prog.main, base->prog.main, cond);
                         });
}

optri_status optri_poststates(const optri_program* p, const optri_universe* u,
                              const optri_options* opts, optri_result** out, char** err) {
  if (!p || !u || !out) {
    setErr(err, "NULL argument");
    return OPTRI_ERR_ARG;
  }
  return guarded(err, [&] {
    Universe uni = u->uni;
    bindRecords(uni, p->prog);
    typecheckProgram(p->prog, &uni);
    ExecLimits lim = limitsOf(opts);
    PostStates ps = poststates(ExecContext{&p->prog, &uni}, p->prog.main, lim, jobsOf(opts));
    auto* r = new optri_result;
    r->code = ps.flagged() ? 2 : 0;
    r->jsonText = poststatesReport(ps, uni, lim.fuel).dump(2) + "\n";
    std::ostringstream sum;
    sum << ps.states.size() << " post-states";
    if (ps.anyFuelExhausted) sum << ", fuel exhausted on some path";
    if (ps.anyRuntimeError) sum << ", runtime errors on some path";
    r->summary = sum.str();
    *out = r;
  });
}

optri_status optri_prove_file(const char* script_path, const optri_options* opts,
                              optri_result** out, char** err) {
  if (!script_path || !out) {
    setErr(err, "NULL argument");
    return OPTRI_ERR_ARG;
  }
  return guarded(err, [&] {
    namespace fs = std::filesystem;
    std::string scriptText = readFile(script_path);
    Script script = loadScript(scriptText);
    fs::path base = fs::path(script_path).parent_path();
    std::string progText = readFile((base / script.programFile).string());
    std::string uniText = readFile((base / script.universeFile).string());
    Program prog = parseProgram(progText);
    Universe uni = loadUniverse(uniText);
    bindRecords(uni, prog);
    typecheckProgram(prog, &uni);
    if (opts && opts->fuel > 0) script.fuel = opts->fuel;
    DerivationReport rep = checkDerivation(script, prog, uni, jobsOf(opts));
    auto* r = new optri_result;
    r->code = rep.proved() ? 0 : 1;
    r->jsonText = derivationReportJson(rep, uni, script.fuel).dump(2) + "\n";
    std::ostringstream sum;
    sum << rep.status;
    if (!rep.failedStep.empty()) sum << " at step " << rep.failedStep;
    r->summary = sum.str();
    *out = r;
  });
}

}  // extern "C"

#include "qaw/transform.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace qaw {

namespace {

const ActionLabel kTau = ActionLabel::silent();

std::string hname(const std::string& src, std::size_t k, int n) {
  std::ostringstream os;
  os << src << "__p" << k << "__" << n;
  return os.str();
}

std::string hname(const std::string& src, std::size_t k, int n,
                  const Symbol& sym) {
  return hname(src, k, n) + "_" + sym;
}

// Helper names are derived from the source transition, so when passes are
// chained an input may already declare the very name a later pass derives.
// Claimed names get underscores appended until they are genuinely unused.
class NamePool {
 public:
  explicit NamePool(const std::vector<std::string>& taken)
      : used_(taken.begin(), taken.end()) {}
  std::string claim(std::string base) {
    while (!used_.insert(base).second) base += "_";
    return base;
  }

 private:
  std::set<std::string> used_;
};

void require_unused(const std::vector<Symbol>& data, const Symbol& sym,
                    const std::string& pass) {
  if (std::find(data.begin(), data.end(), sym) != data.end())
    throw ValidationError(pass + ": input already uses the reserved symbol '" +
                          sym + "'");
}

template <class M>
void note(PassResult<M>& r, bool ok, const std::string& what) {
  r.certificate.push_back(std::string(ok ? "ok: " : "FAIL: ") + what);
  if (!ok) r.certificate_ok = false;
}

template <class M, class Machine>
void note_valid(PassResult<M>& r, const Machine& m) {
  auto problems = validate(m);
  note(r, problems.empty(), "output machine is well formed");
  for (const auto& p : problems) r.certificate.push_back("  - " + p);
}

template <class M>
void note_alphabet(PassResult<M>& r, const std::vector<Symbol>& in_data,
                   const std::vector<Symbol>& out_data) {
  std::set<Symbol> want(in_data.begin(), in_data.end());
  want.insert(r.fresh_symbols.begin(), r.fresh_symbols.end());
  std::set<Symbol> got(out_data.begin(), out_data.end());
  note(r, want == got, "data alphabet = input alphabet plus fresh symbols");
}

bool primitive_shape(const QaTransition& t) {
  switch (t.trig.kind) {
    case TriggerKind::Any: return t.enq.size() == 1;
    case TriggerKind::Head: return t.enq.empty();
    case TriggerKind::Empty: return t.enq.empty();
  }
  return false;
}

std::vector<Symbol> cat(std::initializer_list<std::vector<Symbol>> parts) {
  std::vector<Symbol> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

PassResult<Qa> eliminate_any_triggers(const Qa& in) {
  PassResult<Qa> r;
  r.pass = "star-elim";
  require_unused(in.data, kMark, r.pass);

  Qa out;
  out.data = in.data;
  out.data.push_back(kMark);
  r.fresh_symbols.insert(kMark);
  out.actions = in.actions;
  out.states = in.states;
  out.initial = in.initial;
  out.finals = in.finals;
  NamePool pool(out.states);

  for (std::size_t k = 0; k < in.transitions.size(); ++k) {
    const QaTransition& tr = in.transitions[k];
    if (tr.trig.kind != TriggerKind::Any) {
      out.transitions.push_back(tr);
      continue;
    }
    // On the empty queue the move needs no bookkeeping.
    out.transitions.push_back({tr.src, tr.act, Trigger::empty(), tr.enq, tr.dst});
    // Otherwise dequeue whatever head is present, remember it behind a
    // marker, cycle the remainder of the queue past the marker, and only
    // then append the block. One helper per source transition: sharing it
    // between two fire-on-anything moves of one state would let the
    // visible action of one finish with the enqueue of the other.
    std::string g = pool.claim(hname(tr.src, k, 1));
    out.states.push_back(g);
    r.fresh_states.insert(g);
    for (const Symbol& d : in.data) {
      out.transitions.push_back({tr.src, tr.act, Trigger::on(d), {d, kMark}, g});
      out.transitions.push_back({g, kTau, Trigger::on(d), {d}, g});
    }
    out.transitions.push_back({g, kTau, Trigger::on(kMark), tr.enq, tr.dst});
  }

  bool no_any = std::none_of(
      out.transitions.begin(), out.transitions.end(),
      [](const QaTransition& t) { return t.trig.kind == TriggerKind::Any; });
  note(r, no_any, "no fire-on-anything triggers remain");
  note_alphabet(r, in.data, out.data);
  note_valid(r, out);
  r.machine = std::move(out);
  return r;
}

PassResult<Qa> normalize(const Qa& in) {
  PassResult<Qa> r;
  r.pass = "normalize";
  require_unused(in.data, kMark, r.pass);

  Qa out;
  out.data = in.data;
  out.actions = in.actions;
  out.states = in.states;
  out.initial = in.initial;
  out.finals = in.finals;
  bool used_mark = false;
  NamePool pool(out.states);

  auto add_state = [&](std::string name) {
    name = pool.claim(std::move(name));
    out.states.push_back(name);
    r.fresh_states.insert(name);
    return name;
  };

  for (std::size_t k = 0; k < in.transitions.size(); ++k) {
    const QaTransition& tr = in.transitions[k];
    if (primitive_shape(tr)) {
      out.transitions.push_back(tr);
      continue;
    }
    if (tr.trig.kind == TriggerKind::Any && tr.enq.empty()) {
      // Fire-on-anything without an enqueue: push a marker, then cycle
      // every symbol past it one dequeue/enqueue pair at a time (a
      // combined "rotate" step is not a primitive shape).
      used_mark = true;
      std::string h = add_state(hname(tr.src, k, 1));
      out.transitions.push_back({tr.src, tr.act, Trigger::any(), {kMark}, h});
      out.transitions.push_back({h, kTau, Trigger::on(kMark), {}, tr.dst});
      for (const Symbol& d : in.data) {
        std::string hd = add_state(hname(tr.src, k, 1, d));
        out.transitions.push_back({h, kTau, Trigger::on(d), {}, hd});
        out.transitions.push_back({hd, kTau, Trigger::any(), {d}, h});
      }
      continue;
    }
    // Split into a first step carrying the action and trigger, followed by
    // singleton enqueues. Within a block the last element is read first,
    // so the chain enqueues back to front.
    struct Step {
      ActionLabel act;
      Trigger trig;
      std::vector<Symbol> enq;
    };
    std::vector<Step> steps;
    if (tr.trig.kind == TriggerKind::Any) {
      for (std::size_t i = tr.enq.size(); i-- > 0;)
        steps.push_back({steps.empty() ? tr.act : kTau, Trigger::any(),
                         {tr.enq[i]}});
    } else {
      steps.push_back({tr.act, tr.trig, {}});
      for (std::size_t i = tr.enq.size(); i-- > 0;)
        steps.push_back({kTau, Trigger::any(), {tr.enq[i]}});
    }
    std::string cur = tr.src;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      std::string nxt = i + 1 == steps.size()
                            ? tr.dst
                            : add_state(hname(tr.src, k, static_cast<int>(i) + 1));
      out.transitions.push_back({cur, steps[i].act, steps[i].trig, steps[i].enq, nxt});
      cur = nxt;
    }
  }

  if (used_mark) {
    out.data.push_back(kMark);
    r.fresh_symbols.insert(kMark);
  }

  bool all_primitive = std::all_of(out.transitions.begin(),
                                   out.transitions.end(), primitive_shape);
  note(r, all_primitive,
       "every transition is a singleton enqueue, a single dequeue, or an "
       "empty-queue test");
  note_alphabet(r, in.data, out.data);
  note_valid(r, out);
  r.machine = std::move(out);
  return r;
}

PassResult<Qa> merge_two_queues(const Qa2& in) {
  PassResult<Qa> r;
  r.pass = "merge-queues";
  require_unused(in.data, kSplit, r.pass);
  require_unused(in.data, kMark, r.pass);

  Qa out;
  out.data = in.data;
  out.data.push_back(kSplit);
  out.data.push_back(kMark);
  r.fresh_symbols.insert(kSplit);
  r.fresh_symbols.insert(kMark);
  out.actions = in.actions;
  out.states = in.states;
  out.finals = in.finals;
  NamePool pool(out.states);

  // The combined word is queue1 ++ ≬ ++ queue2, read end of queue2 at the
  // global read end. The empty pair corresponds to the word "≬", entered
  // from a fresh boot state.
  std::string boot = pool.claim(in.initial + "__boot");
  out.states.push_back(boot);
  r.fresh_states.insert(boot);
  out.initial = boot;
  out.transitions.push_back({boot, kTau, Trigger::empty(), {kSplit}, in.initial});

  const std::vector<Symbol> SEP = {kSplit};
  const std::vector<Symbol> MARK = {kMark};

  for (std::size_t k = 0; k < in.transitions.size(); ++k) {
    const Qa2Transition& tr = in.transitions[k];
    int next_helper = 1;
    auto fresh = [&]() {
      std::string h = pool.claim(hname(tr.src, k, next_helper++));
      out.states.push_back(h);
      r.fresh_states.insert(h);
      return h;
    };
    auto emit = [&](const std::string& src, const ActionLabel& act,
                    const Trigger& trig, const std::vector<Symbol>& enq,
                    const std::string& dst) {
      out.transitions.push_back({src, act, trig, enq, dst});
    };
    // One rotation step per plain data symbol: move the read-end symbol
    // back to the write end, leaving markers in place.
    auto rot = [&](const std::string& st) {
      for (const Symbol& f : in.data) emit(st, kTau, Trigger::on(f), {f}, st);
    };

    const std::vector<Symbol>& q1blk = tr.enq1;  // prepended to queue 1
    const std::vector<Symbol>& q2blk = tr.enq2;  // prepended to queue 2
    const TriggerKind k1 = tr.trig1.kind, k2 = tr.trig2.kind;
    const Symbol d = tr.trig1.head, e = tr.trig2.head;

    if (k1 == TriggerKind::Any && k2 == TriggerKind::Any) {
      // Mark the write end, cycle queue 2 behind the divider (inserting
      // the queue-2 block there), cycle queue 1, then replace the marker
      // with the queue-1 block.
      std::string h1 = fresh(), h2 = fresh();
      emit(tr.src, tr.act, Trigger::any(), MARK, h1);
      rot(h1);
      emit(h1, kTau, Trigger::on(kSplit), cat({SEP, q2blk}), h2);
      rot(h2);
      emit(h2, kTau, Trigger::on(kMark), q1blk, tr.dst);
    } else if (k1 == TriggerKind::Any && k2 == TriggerKind::Empty) {
      // Queue 2 is empty exactly when the divider is at the read end.
      std::string h1 = fresh();
      emit(tr.src, tr.act, Trigger::on(kSplit), cat({SEP, q2blk, MARK}), h1);
      rot(h1);
      emit(h1, kTau, Trigger::on(kMark), q1blk, tr.dst);
    } else if (k1 == TriggerKind::Any && k2 == TriggerKind::Head) {
      std::string h1 = fresh(), h2 = fresh();
      emit(tr.src, tr.act, Trigger::on(e), MARK, h1);
      rot(h1);
      emit(h1, kTau, Trigger::on(kSplit), cat({SEP, q2blk}), h2);
      rot(h2);
      emit(h2, kTau, Trigger::on(kMark), q1blk, tr.dst);
    } else if (k1 == TriggerKind::Empty && k2 == TriggerKind::Empty) {
      // Commit silently on "divider at the read end", then check that
      // nothing precedes it. The failing branch restores the word; the
      // escape keeps the committed entry reversible.
      std::string h1 = fresh(), h2 = fresh(), h3 = fresh();
      emit(tr.src, kTau, Trigger::on(kSplit), cat({SEP, MARK}), h1);
      emit(h1, kTau, Trigger::on(kMark), {}, h2);
      emit(h2, tr.act, Trigger::on(kSplit), cat({q1blk, SEP, q2blk}), tr.dst);
      emit(h2, kTau, Trigger::any(), {}, tr.src);  // escape
      for (const Symbol& f : in.data) emit(h1, kTau, Trigger::on(f), {f}, h3);
      rot(h3);
      emit(h3, kTau, Trigger::on(kMark), {}, tr.src);
    } else if (k1 == TriggerKind::Empty && k2 == TriggerKind::Any) {
      std::string h1 = fresh(), h2 = fresh(), h3 = fresh();
      emit(tr.src, kTau, Trigger::any(), MARK, h1);
      rot(h1);
      emit(h1, kTau, Trigger::on(kSplit), {}, h2);
      emit(h2, tr.act, Trigger::on(kMark), cat({q1blk, SEP, q2blk}), tr.dst);
      emit(h2, kTau, Trigger::on(kMark), SEP, tr.src);  // escape
      for (const Symbol& f : in.data)
        emit(h2, kTau, Trigger::on(f), {f, kSplit}, h3);
      rot(h3);
      emit(h3, kTau, Trigger::on(kMark), {}, tr.src);
    } else if (k1 == TriggerKind::Empty && k2 == TriggerKind::Head) {
      std::string h1 = fresh(), h2 = fresh(), esc = fresh();
      std::string h3 = fresh(), h4 = fresh(), h5 = fresh();
      emit(tr.src, kTau, Trigger::on(e), MARK, h1);
      rot(h1);
      emit(h1, kTau, Trigger::on(kSplit), {}, h2);
      emit(h2, tr.act, Trigger::on(kMark), cat({q1blk, SEP, q2blk}), tr.dst);
      // escape: queue 1 was empty but the action was not taken; put the
      // dequeued symbol and the divider back
      emit(h2, kTau, Trigger::on(kMark), {e, kMark}, esc);
      rot(esc);
      emit(esc, kTau, Trigger::on(kMark), SEP, tr.src);
      // fail: queue 1 was not empty
      for (const Symbol& g : in.data)
        emit(h2, kTau, Trigger::on(g), {g, kSplit}, h3);
      rot(h3);
      emit(h3, kTau, Trigger::on(kMark), {e, kMark}, h4);
      rot(h4);
      emit(h4, kTau, Trigger::on(kSplit), SEP, h5);
      rot(h5);
      emit(h5, kTau, Trigger::on(kMark), {}, tr.src);
    } else if (k1 == TriggerKind::Head && k2 == TriggerKind::Empty) {
      std::string h1 = fresh(), h2 = fresh(), h3 = fresh();
      emit(tr.src, kTau, Trigger::on(kSplit), MARK, h1);
      emit(h1, tr.act, Trigger::on(d), cat({SEP, q2blk}), h2);
      rot(h2);
      emit(h2, kTau, Trigger::on(kMark), q1blk, tr.dst);
      // restore (for the head symbol itself this doubles as the escape)
      for (const Symbol& g : in.data)
        emit(h1, kTau, Trigger::on(g), {g, kSplit}, h3);
      rot(h3);
      emit(h3, kTau, Trigger::on(kMark), {}, tr.src);
      emit(h1, kTau, Trigger::on(kMark), SEP, tr.src);  // queue 1 empty
    } else if (k1 == TriggerKind::Head && k2 == TriggerKind::Any) {
      std::string h1 = fresh(), h2 = fresh(), h3 = fresh(), h4 = fresh();
      emit(tr.src, kTau, Trigger::any(), MARK, h1);
      rot(h1);
      emit(h1, kTau, Trigger::on(kSplit), {}, h2);
      emit(h2, tr.act, Trigger::on(d), cat({SEP, q2blk}), h3);
      rot(h3);
      emit(h3, kTau, Trigger::on(kMark), q1blk, tr.dst);
      for (const Symbol& g : in.data)
        emit(h2, kTau, Trigger::on(g), {g, kSplit}, h4);
      rot(h4);
      emit(h4, kTau, Trigger::on(kMark), {}, tr.src);
      emit(h2, kTau, Trigger::on(kMark), SEP, tr.src);  // queue 1 empty
    } else {  // Head, Head
      std::string h1 = fresh(), h2 = fresh(), h3 = fresh();
      std::string h4 = fresh(), h5 = fresh(), h6 = fresh(), h7 = fresh();
      emit(tr.src, kTau, Trigger::on(e), MARK, h1);
      rot(h1);
      emit(h1, kTau, Trigger::on(kSplit), {}, h2);
      emit(h2, tr.act, Trigger::on(d), cat({SEP, q2blk}), h3);
      rot(h3);
      emit(h3, kTau, Trigger::on(kMark), q1blk, tr.dst);
      // fail / escape: restore both dequeued symbols
      for (const Symbol& g : in.data)
        emit(h2, kTau, Trigger::on(g), {g, kSplit}, h4);
      rot(h4);
      emit(h4, kTau, Trigger::on(kMark), {e, kMark}, h5);
      rot(h5);
      emit(h5, kTau, Trigger::on(kSplit), SEP, h6);
      rot(h6);
      emit(h6, kTau, Trigger::on(kMark), {}, tr.src);
      // queue 1 empty: only the queue-2 head needs to go back
      emit(h2, kTau, Trigger::on(kMark), {e, kMark}, h7);
      rot(h7);
      emit(h7, kTau, Trigger::on(kMark), SEP, tr.src);
    }
  }

  note(r, out.transitions.front().src == boot &&
             out.transitions.front().enq == SEP,
       "boot step enqueues exactly the divider");
  note_alphabet(r, in.data, out.data);
  note_valid(r, out);
  r.machine = std::move(out);
  return r;
}

PassResult<Qa> rtm_to_qa(const Rtm& in) {
  PassResult<Qa> r;
  r.pass = "to-qa";
  require_unused(in.data, kSplit, r.pass);
  require_unused(in.data, kMark, r.pass);
  require_unused(in.data, kBlank, r.pass);

  // Tape alphabet plus the blank as ordinary queue data.
  std::vector<Symbol> tape = in.data;
  tape.push_back(kBlank);

  Qa out;
  out.data = tape;
  out.data.push_back(kSplit);
  out.data.push_back(kMark);
  r.fresh_symbols = {kBlank, kSplit, kMark};
  out.actions = in.actions;
  out.states = in.states;
  out.finals = in.finals;
  NamePool pool(out.states);

  // A tape instance left|head|right becomes reverse(right) ≬ left head.
  // The blank instance is the word "≬ _", set up by a boot step.
  std::string boot = pool.claim(in.initial + "__boot");
  out.states.push_back(boot);
  r.fresh_states.insert(boot);
  out.initial = boot;
  out.transitions.push_back(
      {boot, kTau, Trigger::empty(), {kSplit, kBlank}, in.initial});

  for (std::size_t k = 0; k < in.transitions.size(); ++k) {
    const RtmTransition& tr = in.transitions[k];
    auto fresh = [&](int n, const Symbol& key = "") {
      std::string h =
          pool.claim(key.empty() ? hname(tr.src, k, n) : hname(tr.src, k, n, key));
      out.states.push_back(h);
      r.fresh_states.insert(h);
      return h;
    };
    auto emit = [&](const std::string& src, const ActionLabel& act,
                    const Trigger& trig, const std::vector<Symbol>& enq,
                    const std::string& dst) {
      out.transitions.push_back({src, act, trig, enq, dst});
    };
    auto rot = [&](const std::string& st) {
      for (const Symbol& f : tape) emit(st, kTau, Trigger::on(f), {f}, st);
    };

    // Both gadgets keep the word encoding canonical (no blank directly
    // after the divider, no blank at the far end of the right part), so a
    // machine that revisits a tape instance revisits the same queue word.
    // The state entered from the marker step "knows" whether the left part
    // was empty: the first rotation moves to a sibling state, so the
    // divider showing up before any rotation means there was nothing left
    // of the head.
    std::string ha = fresh(1), hb = fresh(2);
    emit(tr.src, tr.act, Trigger::on(tr.read), {kMark}, ha);
    for (const Symbol& f : tape) emit(ha, kTau, Trigger::on(f), {f}, hb);
    rot(hb);

    if (!tr.move_right) {
      // Write, move left.  A blank is padded in as the new head only when
      // the left part was empty; a written blank is held back and dropped
      // again if it would sit at the strippable end of the right part.
      if (tr.write != kBlank) {
        std::string he = fresh(3);
        emit(ha, kTau, Trigger::on(kSplit), {tr.write, kSplit, kBlank}, he);
        emit(hb, kTau, Trigger::on(kSplit), {tr.write, kSplit}, he);
        rot(he);
        emit(he, kTau, Trigger::on(kMark), {}, tr.dst);
      } else {
        std::string hc = fresh(3), hd = fresh(4);
        emit(ha, kTau, Trigger::on(kSplit), {kSplit, kBlank}, hc);
        emit(hb, kTau, Trigger::on(kSplit), {kSplit}, hc);
        for (const Symbol& f : tape)
          emit(hc, kTau, Trigger::on(f), {f, kBlank}, hd);
        rot(hd);
        emit(hc, kTau, Trigger::on(kMark), {}, tr.dst);  // right part empty: drop it
        emit(hd, kTau, Trigger::on(kMark), {}, tr.dst);
      }
    } else {
      // Write, move right.  The new head is the first symbol of the right
      // part (or a fresh blank when that part is empty); the written symbol
      // joins the left part unless it is a blank that would lead it.
      std::string c0 = fresh(3), c1 = fresh(4), hh = fresh(5);
      emit(ha, kTau, Trigger::on(kSplit), {kSplit}, c0);
      emit(hb, kTau, Trigger::on(kSplit), {kSplit}, c1);
      struct Arm {
        std::string state;
        int tag;
        bool drop;
      };
      for (const Arm& arm : {Arm{c0, 6, tr.write == kBlank}, Arm{c1, 7, false}}) {
        std::vector<Symbol> written;
        if (!arm.drop) written.push_back(tr.write);
        std::vector<Symbol> fresh_head = written;
        fresh_head.push_back(kBlank);
        fresh_head.push_back(kMark);
        emit(arm.state, kTau, Trigger::on(kMark), fresh_head, hh);
        for (const Symbol& g : tape) {
          std::string hg = fresh(arm.tag, g);
          emit(arm.state, kTau, Trigger::on(g), {}, hg);
          rot(hg);
          std::vector<Symbol> imported = written;
          imported.push_back(g);
          imported.push_back(kMark);
          emit(hg, kTau, Trigger::on(kMark), imported, hh);
        }
      }
      rot(hh);
      emit(hh, kTau, Trigger::on(kSplit), {kSplit}, hh);
      emit(hh, kTau, Trigger::on(kMark), {}, tr.dst);
    }
  }

  bool no_any = std::none_of(
      out.transitions.begin(), out.transitions.end(),
      [](const QaTransition& t) { return t.trig.kind == TriggerKind::Any; });
  note(r, no_any, "all triggers inspect the queue");
  note_alphabet(r, in.data, out.data);
  note_valid(r, out);
  r.machine = std::move(out);
  return r;
}

PassResult<Rtm> qa_to_rtm(const Qa& in0) {
  PassResult<Rtm> r;
  r.pass = "to-rtm";

  Qa in = in0;
  if (!std::all_of(in0.transitions.begin(), in0.transitions.end(),
                   primitive_shape)) {
    PassResult<Qa> pre = normalize(in0);
    in = std::move(pre.machine);
    r.fresh_symbols = pre.fresh_symbols;
    r.fresh_states = pre.fresh_states;
    note(r, pre.certificate_ok, "input rewritten to primitive shapes first");
  }
  require_unused(in.data, kBlank, r.pass);

  Rtm out;
  out.data = in.data;
  out.actions = in.actions;
  out.states = in.states;
  out.initial = in.initial;
  out.finals = in.finals;
  NamePool pool(out.states);

  // A queue word w with head d sits on the tape as w with the tape head
  // standing on d and blanks on the right; the empty queue is the blank
  // tape. Dequeues erase and step left; enqueues walk left to the free
  // end, write, and walk back.
  for (std::size_t k = 0; k < in.transitions.size(); ++k) {
    const QaTransition& tr = in.transitions[k];
    if (tr.trig.kind == TriggerKind::Head) {
      out.transitions.push_back(
          {tr.src, tr.act, tr.trig.head, kBlank, false, tr.dst});
    } else if (tr.trig.kind == TriggerKind::Empty) {
      out.transitions.push_back(
          {tr.src, tr.act, kBlank, kBlank, false, tr.dst});
    } else {
      const Symbol& dnew = tr.enq.front();
      std::string back = pool.claim(hname(tr.src, k, 1));  // walking right, back home
      std::string outw = pool.claim(hname(tr.src, k, 2));  // walking left to the end
      out.states.push_back(back);
      out.states.push_back(outw);
      r.fresh_states.insert(back);
      r.fresh_states.insert(outw);
      // empty queue: write in place, step right onto fresh tape
      out.transitions.push_back({tr.src, tr.act, kBlank, dnew, true, back});
      for (const Symbol& e : in.data) {
        out.transitions.push_back({tr.src, tr.act, e, e, false, outw});
        out.transitions.push_back({outw, kTau, e, e, false, outw});
        out.transitions.push_back({back, kTau, e, e, true, back});
      }
      out.transitions.push_back({outw, kTau, kBlank, dnew, true, back});
      out.transitions.push_back({back, kTau, kBlank, kBlank, false, tr.dst});
    }
  }

  note(r, std::find(out.data.begin(), out.data.end(), kBlank) == out.data.end(),
       "blank left out of the declared tape alphabet");
  note_alphabet(r, in.data, out.data);
  note_valid(r, out);
  r.machine = std::move(out);
  return r;
}

}  // namespace qaw

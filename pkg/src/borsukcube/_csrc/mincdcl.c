/* mincdcl - a small CDCL SAT solver for DIMACS CNF.
 *
 * Usage: mincdcl <file.cnf>
 * Output: "s SATISFIABLE" with "v ..." model lines, or "s UNSATISFIABLE".
 * Exit status: 10 = satisfiable, 20 = unsatisfiable, 1 = error.
 *
 * Techniques: two-watched literals, VSIDS decision heap, first-UIP clause
 * learning with local minimization, LBD-based clause database reduction,
 * Luby restarts alternating with long stable stretches, phase saving and
 * target phases. Comment lines of the form "c phase <lit> ... 0" preset
 * saved phases; conforming solvers ignore them as comments.
 */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

typedef int Lit;   /* 2*var + sign, sign 1 = negated */
typedef int Var;
typedef int Cref;  /* offset into the clause arena */

#define UNDEF (-1)
#define lit_of(v, s) (((v) << 1) | (s))
#define var_of(l) ((l) >> 1)
#define neg(l) ((l) ^ 1)

#define VEC(T) struct { T *d; int n, cap; }
#define vec_push(v, x) do { \
    if ((v).n == (v).cap) { \
        (v).cap = (v).cap ? 2 * (v).cap : 8; \
        (v).d = realloc((v).d, (size_t)(v).cap * sizeof(*(v).d)); \
        if (!(v).d) { fprintf(stderr, "out of memory\n"); exit(1); } \
    } \
    (v).d[(v).n++] = (x); } while (0)

typedef VEC(int) veci;

/* clause arena: [header, size, lits...]; header bit0 = learned, rest = LBD */
static int *arena;
static int arena_n, arena_cap;

static Cref alloc_clause(const Lit *lits, int size, int learned, int lbd) {
    if (arena_n + size + 2 > arena_cap) {
        while (arena_n + size + 2 > arena_cap)
            arena_cap = arena_cap ? 2 * arena_cap : 1 << 20;
        arena = realloc(arena, (size_t)arena_cap * sizeof(int));
        if (!arena) { fprintf(stderr, "out of memory\n"); exit(1); }
    }
    Cref c = arena_n;
    arena[arena_n++] = (lbd << 1) | (learned & 1);
    arena[arena_n++] = size;
    memcpy(arena + arena_n, lits, (size_t)size * sizeof(int));
    arena_n += size;
    return c;
}
#define cl_learned(c) (arena[c] & 1)
#define cl_lbd(c) (arena[c] >> 1)
#define cl_set_lbd(c, l) (arena[c] = ((l) << 1) | (arena[c] & 1))
#define cl_size(c) (arena[(c) + 1])
#define cl_lits(c) (arena + (c) + 2)

static int nvars;
static signed char *assigns;   /* per var: 0/1 or UNDEF */
static signed char *phase;     /* saved phase */
static signed char *target;    /* assignment at deepest consistent trail */
static int target_depth;
static int stable_mode;
static int *level;
static Cref *reason;
static Lit *trail;
static int trail_n, qhead;
static int *trail_lim;
static int dlevel;

typedef struct { Cref cref; Lit blocker; } Watch;
typedef VEC(Watch) vecw;
static vecw *watches;

static double *activity;
static double var_inc = 1.0;
static int *heap, *heap_pos, heap_n;

static signed char *seen;
static int *level_stamp, level_stamp_gen;
static veci learnt_tmp, seen_to_clear, learned_refs;
static long conflicts_total;

static int heap_less(Var a, Var b) { return activity[a] < activity[b]; }

static void heap_up(int i) {
    Var v = heap[i];
    while (i > 0) {
        int p = (i - 1) >> 1;
        if (!heap_less(heap[p], v)) break;
        heap[i] = heap[p]; heap_pos[heap[i]] = i; i = p;
    }
    heap[i] = v; heap_pos[v] = i;
}

static void heap_down(int i) {
    Var v = heap[i];
    for (;;) {
        int l = 2 * i + 1, r = l + 1, m = i;
        Var mv = v;
        if (l < heap_n && heap_less(mv, heap[l])) { m = l; mv = heap[l]; }
        if (r < heap_n && heap_less(mv, heap[r])) { m = r; mv = heap[r]; }
        if (m == i) break;
        heap[i] = heap[m]; heap_pos[heap[i]] = i; i = m;
    }
    heap[i] = v; heap_pos[v] = i;
}

static void heap_insert(Var v) {
    if (heap_pos[v] >= 0) return;
    heap[heap_n] = v; heap_pos[v] = heap_n; heap_n++;
    heap_up(heap_n - 1);
}

static Var heap_pop(void) {
    Var v = heap[0];
    heap_pos[v] = -1;
    heap_n--;
    if (heap_n > 0) { heap[0] = heap[heap_n]; heap_pos[heap[0]] = 0; heap_down(0); }
    return v;
}

static void var_bump(Var v) {
    activity[v] += var_inc;
    if (activity[v] > 1e100) {
        for (int i = 0; i < nvars; i++) activity[i] *= 1e-100;
        var_inc *= 1e-100;
    }
    if (heap_pos[v] >= 0) heap_up(heap_pos[v]);
}

static signed char value_lit(Lit l) {
    signed char a = assigns[var_of(l)];
    return a == UNDEF ? (signed char)UNDEF : (signed char)(a ^ (l & 1));
}

static void enqueue(Lit l, Cref from) {
    Var v = var_of(l);
    assigns[v] = (signed char)(1 ^ (l & 1));
    level[v] = dlevel;
    reason[v] = from;
    trail[trail_n++] = l;
}

static void watch_clause(Cref c) {
    Lit *ls = cl_lits(c);
    Watch w0 = { c, ls[1] }, w1 = { c, ls[0] };
    vec_push(watches[neg(ls[0])], w0);
    vec_push(watches[neg(ls[1])], w1);
}

static Cref propagate(void) {
    while (qhead < trail_n) {
        Lit p = trail[qhead++];
        vecw *ws = &watches[p];
        int i = 0, j = 0;
        while (i < ws->n) {
            Watch w = ws->d[i];
            if (value_lit(w.blocker) == 1) { ws->d[j++] = ws->d[i++]; continue; }
            Cref c = w.cref;
            Lit *ls = cl_lits(c);
            Lit false_lit = neg(p);
            if (ls[0] == false_lit) { ls[0] = ls[1]; ls[1] = false_lit; }
            if (value_lit(ls[0]) == 1) {
                ws->d[j].cref = c; ws->d[j].blocker = ls[0]; j++; i++;
                continue;
            }
            int size = cl_size(c), moved = 0;
            for (int t = 2; t < size; t++) {
                if (value_lit(ls[t]) != 0) {
                    ls[1] = ls[t]; ls[t] = false_lit;
                    Watch nw = { c, ls[0] };
                    vec_push(watches[neg(ls[1])], nw);
                    moved = 1;
                    break;
                }
            }
            if (moved) { i++; continue; }
            ws->d[j].cref = c; ws->d[j].blocker = ls[0]; j++; i++;
            if (value_lit(ls[0]) == 0) {
                while (i < ws->n) ws->d[j++] = ws->d[i++];
                ws->n = j;
                qhead = trail_n;
                return c;
            }
            enqueue(ls[0], c);
        }
        ws->n = j;
    }
    return UNDEF;
}

static int clause_lbd(const Lit *ls, int size) {
    int lbd = 0;
    level_stamp_gen++;
    for (int k = 0; k < size; k++) {
        int lv = level[var_of(ls[k])];
        if (lv > 0 && level_stamp[lv] != level_stamp_gen) {
            level_stamp[lv] = level_stamp_gen;
            lbd++;
        }
    }
    return lbd;
}

static int lit_redundant(Lit l) {
    Cref r = reason[var_of(l)];
    if (r == UNDEF) return 0;
    Lit *ls = cl_lits(r);
    int size = cl_size(r);
    for (int k = 0; k < size; k++) {
        Lit q = ls[k];
        if (var_of(q) == var_of(l)) continue;
        if (!seen[var_of(q)] && level[var_of(q)] > 0) return 0;
    }
    return 1;
}

static int analyze(Cref confl, veci *out, int *out_btlevel) {
    int path = 0;
    Lit p = UNDEF;
    int idx = trail_n - 1;
    out->n = 0;
    vec_push(*out, UNDEF); /* slot for the asserting literal */

    for (;;) {
        Lit *ls = cl_lits(confl);
        int size = cl_size(confl);
        if (cl_learned(confl) && cl_lbd(confl) > 2) {
            int lbd = clause_lbd(ls, size);
            if (lbd < cl_lbd(confl)) cl_set_lbd(confl, lbd);
        }
        for (int k = (p == UNDEF ? 0 : 1); k < size; k++) {
            Lit q = ls[k];
            Var v = var_of(q);
            if (!seen[v] && level[v] > 0) {
                seen[v] = 1;
                vec_push(seen_to_clear, v);
                var_bump(v);
                if (level[v] >= dlevel) path++;
                else vec_push(*out, q);
            }
        }
        while (!seen[var_of(trail[idx])]) idx--;
        p = trail[idx--];
        confl = reason[var_of(p)];
        seen[var_of(p)] = 0;
        path--;
        if (path == 0) break;
    }
    out->d[0] = neg(p);

    int i, j;
    for (i = j = 1; i < out->n; i++)
        if (!lit_redundant(out->d[i])) out->d[j++] = out->d[i];
    out->n = j;

    int bt = 0;
    if (out->n > 1) {
        int maxi = 1;
        for (i = 2; i < out->n; i++)
            if (level[var_of(out->d[i])] > level[var_of(out->d[maxi])]) maxi = i;
        Lit tmp = out->d[1]; out->d[1] = out->d[maxi]; out->d[maxi] = tmp;
        bt = level[var_of(out->d[1])];
    }
    int lbd = clause_lbd(out->d, out->n);
    for (i = 0; i < seen_to_clear.n; i++) seen[seen_to_clear.d[i]] = 0;
    seen_to_clear.n = 0;
    *out_btlevel = bt;
    return lbd;
}

static void backtrack(int lvl) {
    if (dlevel <= lvl) return;
    for (int i = trail_n - 1; i >= trail_lim[lvl]; i--) {
        Var v = var_of(trail[i]);
        phase[v] = assigns[v];
        assigns[v] = UNDEF;
        reason[v] = UNDEF;
        if (heap_pos[v] < 0) heap_insert(v);
    }
    trail_n = trail_lim[lvl];
    qhead = trail_n;
    dlevel = lvl;
}

static int cmp_lbd(const void *a, const void *b) {
    Cref x = *(const Cref *)a, y = *(const Cref *)b;
    if (cl_lbd(x) != cl_lbd(y)) return cl_lbd(y) - cl_lbd(x);
    return cl_size(y) - cl_size(x);
}

static void reduce_db(void) {
    qsort(learned_refs.d, (size_t)learned_refs.n, sizeof(Cref), cmp_lbd);
    int targetn = learned_refs.n / 2;
    signed char *deleted = calloc((size_t)arena_n, 1);
    if (!deleted) return;
    int removed = 0, j = 0;
    for (int i = 0; i < learned_refs.n; i++) {
        Cref c = learned_refs.d[i];
        Lit *ls = cl_lits(c);
        Var v0 = var_of(ls[0]);
        int is_reason = assigns[v0] != UNDEF && reason[v0] == c;
        if (removed < targetn && !is_reason && cl_lbd(c) > 2 && cl_size(c) > 2) {
            deleted[c] = 1;
            removed++;
        } else {
            learned_refs.d[j++] = c;
        }
    }
    learned_refs.n = j;
    for (int l = 0; l < 2 * nvars; l++) {
        vecw *ws = &watches[l];
        int a = 0;
        for (int i = 0; i < ws->n; i++)
            if (!deleted[ws->d[i].cref]) ws->d[a++] = ws->d[i];
        ws->n = a;
    }
    free(deleted);
}

static double luby(double y, int x) {
    int size, seq;
    for (size = 1, seq = 0; size < x + 1; seq++, size = 2 * size + 1) ;
    while (size - 1 != x) {
        size = (size - 1) >> 1;
        seq--;
        x = x % size;
    }
    double r = 1;
    for (int i = 0; i < seq; i++) r *= y;
    return r;
}

static int solve(void) {
    int restart_num = 0;
    long next_reduce = 4000;
    const long mode_interval = 10000;
    long next_switch = mode_interval;
    for (;;) {
        long budget = stable_mode
            ? 4096
            : (long)(luby(2.0, restart_num++) * 256);
        long confl_here = 0;
        backtrack(0);
        for (;;) {
            Cref confl = propagate();
            if (confl != UNDEF) {
                conflicts_total++;
                confl_here++;
                if (dlevel == 0) return 20;
                int btlevel;
                int lbd = analyze(confl, &learnt_tmp, &btlevel);
                backtrack(btlevel);
                if (learnt_tmp.n == 1) {
                    enqueue(learnt_tmp.d[0], UNDEF);
                } else {
                    Cref c = alloc_clause(learnt_tmp.d, learnt_tmp.n, 1, lbd);
                    vec_push(learned_refs, c);
                    watch_clause(c);
                    enqueue(learnt_tmp.d[0], c);
                }
                var_inc *= (1.0 / 0.95);
                if (conflicts_total >= next_reduce &&
                    learned_refs.n > 2000 + nvars / 2) {
                    reduce_db();
                    next_reduce = conflicts_total + 4000
                        + 300 * (conflicts_total / 4000);
                }
                if (conflicts_total >= next_switch) {
                    stable_mode = !stable_mode;
                    next_switch = conflicts_total + mode_interval;
                    target_depth = 0;
                    break;
                }
            } else {
                if (trail_n > target_depth) {
                    target_depth = trail_n;
                    memcpy(target, assigns, (size_t)nvars);
                }
                if (confl_here >= budget) break;
                Var v = UNDEF;
                while (heap_n > 0) {
                    Var u = heap_pop();
                    if (assigns[u] == UNDEF) { v = u; break; }
                }
                if (v == UNDEF) return 10;
                trail_lim[dlevel++] = trail_n;
                signed char ph = phase[v];
                if (stable_mode && target[v] != UNDEF) ph = target[v];
                enqueue(lit_of(v, ph == 0 ? 1 : 0), UNDEF);
            }
        }
    }
}

static int read_int(FILE *f, int *out) {
    int c, sgn = 1, val = 0, any = 0;
    do { c = getc(f); } while (c == ' ' || c == '\t' || c == '\n' || c == '\r');
    if (c == EOF) return 0;
    if (c == '-') { sgn = -1; c = getc(f); }
    while (c >= '0' && c <= '9') { val = val * 10 + (c - '0'); c = getc(f); any = 1; }
    if (!any) return 0;
    *out = sgn * val;
    return 1;
}

int main(int argc, char **argv) {
    if (argc >= 2 && strcmp(argv[1], "--version") == 0) {
        printf("mincdcl 1.0\n");
        return 0;
    }
    if (argc < 2) { fprintf(stderr, "usage: %s <cnf>\n", argv[0]); return 1; }
    FILE *f = strcmp(argv[1], "-") == 0 ? stdin : fopen(argv[1], "r");
    if (!f) { fprintf(stderr, "cannot open %s\n", argv[1]); return 1; }
    printf("c mincdcl 1.0\n");

    veci lits = {0, 0, 0};
    veci phase_hints = {0, 0, 0};
    int c;
    int nclauses_hdr = 0;
    nvars = 0;
    while ((c = getc(f)) != EOF) {
        if (c == 'c') {
            char word[16];
            if (fscanf(f, "%15s", word) == 1 && strcmp(word, "phase") == 0) {
                int x;
                while (read_int(f, &x) && x != 0) vec_push(phase_hints, x);
            }
            while ((c = getc(f)) != '\n' && c != EOF) ;
        } else if (c == 'p') {
            if (fscanf(f, " cnf %d %d", &nvars, &nclauses_hdr) != 2) {
                fprintf(stderr, "bad DIMACS header\n");
                return 1;
            }
            break;
        } else if (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
            continue;
        } else {
            fprintf(stderr, "unexpected character before header\n");
            return 1;
        }
    }
    if (nvars < 0) { fprintf(stderr, "bad variable count\n"); return 1; }

    assigns = malloc((size_t)nvars + 1);
    memset(assigns, UNDEF, (size_t)nvars + 1);
    phase = calloc((size_t)nvars + 1, 1);
    target = malloc((size_t)nvars + 1);
    memset(target, UNDEF, (size_t)nvars + 1);
    level = calloc((size_t)nvars + 1, sizeof(int));
    reason = malloc(((size_t)nvars + 1) * sizeof(Cref));
    trail = malloc(((size_t)nvars + 1) * sizeof(Lit));
    trail_lim = malloc(((size_t)nvars + 2) * sizeof(int));
    watches = calloc((size_t)2 * nvars + 2, sizeof(vecw));
    activity = calloc((size_t)nvars + 1, sizeof(double));
    heap = malloc(((size_t)nvars + 1) * sizeof(int));
    heap_pos = malloc(((size_t)nvars + 1) * sizeof(int));
    seen = calloc((size_t)nvars + 1, 1);
    level_stamp = calloc((size_t)nvars + 2, sizeof(int));
    if (!assigns || !phase || !target || !level || !reason || !trail
        || !trail_lim || !watches || !activity || !heap || !heap_pos
        || !seen || !level_stamp) {
        fprintf(stderr, "out of memory\n");
        return 1;
    }
    for (int i = 0; i < nvars; i++) reason[i] = UNDEF;
    heap_n = 0;
    for (int i = 0; i < nvars; i++) { heap_pos[i] = -1; heap_insert(i); }

    int trivial_unsat = 0;
    for (;;) {
        long fpos = ftell(f);
        c = getc(f);
        while (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
            fpos = ftell(f);
            c = getc(f);
        }
        if (c == 'c') {
            char word[16];
            if (fscanf(f, "%15s", word) == 1 && strcmp(word, "phase") == 0) {
                int y;
                while (read_int(f, &y) && y != 0) vec_push(phase_hints, y);
            }
            while ((c = getc(f)) != '\n' && c != EOF) ;
            continue;
        }
        if (c == EOF) break;
        fseek(f, fpos, SEEK_SET);
        lits.n = 0;
        int tautology = 0, x = 0, got_zero = 0;
        while (read_int(f, &x)) {
            if (x == 0) { got_zero = 1; break; }
            Var v = abs(x) - 1;
            if (v >= nvars) { fprintf(stderr, "literal out of range\n"); return 1; }
            Lit l = lit_of(v, x < 0 ? 1 : 0);
            int dup = 0;
            for (int i = 0; i < lits.n; i++) {
                if (lits.d[i] == l) dup = 1;
                if (lits.d[i] == neg(l)) tautology = 1;
            }
            if (!dup) vec_push(lits, l);
        }
        if (!got_zero && lits.n == 0) break;
        if (tautology) continue;
        if (lits.n == 0) { trivial_unsat = 1; break; }
        if (lits.n == 1) {
            if (value_lit(lits.d[0]) == 0) { trivial_unsat = 1; break; }
            if (value_lit(lits.d[0]) == UNDEF) enqueue(lits.d[0], UNDEF);
        } else {
            watch_clause(alloc_clause(lits.d, lits.n, 0, 0));
        }
    }
    if (f != stdin) fclose(f);

    for (int i = 0; i < phase_hints.n; i++) {
        int h = phase_hints.d[i];
        Var v = abs(h) - 1;
        if (0 <= v && v < nvars) phase[v] = h > 0 ? 1 : 0;
    }
    if (phase_hints.n > 0) stable_mode = 1;

    int res;
    if (trivial_unsat) res = 20;
    else if (propagate() != UNDEF) res = 20;
    else res = solve();

    if (res == 10) {
        printf("s SATISFIABLE\n");
        printf("v");
        int col = 1;
        for (int v = 0; v < nvars; v++) {
            char buf[16];
            int litv = (assigns[v] == 1) ? (v + 1) : -(v + 1);
            int len = snprintf(buf, sizeof buf, " %d", litv);
            if (col + len > 78) { printf("\nv"); col = 1; }
            fputs(buf, stdout);
            col += len;
        }
        if (col + 2 > 78) printf("\nv 0\n"); else printf(" 0\n");
        return 10;
    }
    printf("s UNSATISFIABLE\n");
    return 20;
}

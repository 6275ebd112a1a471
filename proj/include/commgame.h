/* Copyright 2026 The commgame Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the commgame solver: exact equilibrium payoff surfaces of
 * alternating information-refinement protocols over the belief square,
 * protocol extraction, and the bilateral-trade toolkit.
 *
 * All functions returning cg_status set a thread-local message readable via
 * cg_last_error() on failure. Strings returned through char** are allocated
 * by the library and must be released with cg_string_free(). Rationals cross
 * the boundary as strings: "3", "-1/2".
 */

#ifndef COMMGAME_H_
#define COMMGAME_H_

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cg_status {
  CG_OK = 0,
  CG_ERROR_PARSE = 1,             /* malformed JSON or rational string */
  CG_ERROR_INVALID_ARGUMENT = 2,  /* out-of-range input or wrong game shape */
  CG_ERROR_PRECONDITION = 3,      /* game violates an engine precondition */
  CG_ERROR_IO = 4,                /* file could not be read */
  CG_ERROR_INTERNAL = 5           /* an internal invariant check failed */
} cg_status;

typedef enum cg_format {
  CG_FORMAT_TEXT = 0,
  CG_FORMAT_JSON = 1,
  CG_FORMAT_CSV = 2,
  CG_FORMAT_DOT = 3,
  CG_FORMAT_SVG = 4
} cg_format;

/* A parsed game specification (matrix, trade_binary or trade kind). */
typedef struct cg_game cg_game;
/* A finished backward-induction run over the belief square. */
typedef struct cg_run cg_run;

const char* cg_version(void);
const char* cg_last_error(void);

cg_status cg_game_from_json(const char* json_text, cg_game** out_game);
cg_status cg_game_from_file(const char* path, cg_game** out_game);
void cg_game_free(cg_game* game);

/* Runs the alternating-concavification engine for the given number of
 * rounds. The game must be a binary-type game (matrix kind, trade_binary,
 * or a trade spec with two values and at most two costs). */
cg_status cg_run_create(const cg_game* game, int rounds, cg_run** out_run);
void cg_run_free(cg_run* run);

/* Payoff table per round at the start belief (text, json or csv). */
cg_status cg_run_payoff_table(const cg_run* run, const char* p, const char* q,
                              cg_format format, char** out);

/* Realized protocol tree from the start belief (json or dot). */
cg_status cg_run_trace(const cg_run* run, const char* p, const char* q,
                       cg_format format, char** out);

/* Square diagram of the round's refinement rule (dot or svg); round 0 shows
 * the seller's action regions. */
cg_status cg_run_partition(const cg_run* run, int round, cg_format format,
                           char** out);

/* Payoff surface of one round for one player ("S" or "B") as JSON. */
cg_status cg_run_surface(const cg_run* run, int round, const char* player,
                         char** out_json);

/* Message-complexity report at the start belief as JSON. Trade games carry
 * an efficiency certificate against the first-best welfare; matrix games can
 * only certify via a fixed point. */
cg_status cg_run_complexity(const cg_run* run, const char* p, const char* q,
                            char** out_json);

/* Bilateral-trade toolkit on a trade-kind game.
 *   subcommand: "two-round" | "bbm" | "lp3" | "complexity"
 *   options_json (may be NULL): {
 *     "lp_mode": "voluntary" | "literal-zero",
 *     "qgrid": ["0", "1/3", ...],
 *     "start_p": "1/3", "start_q": "1/2"   // for specs without distributions
 *   }
 * Formats: text or json. */
cg_status cg_trade_report(const cg_game* game, const char* subcommand,
                          const char* options_json, cg_format format, char** out);

void cg_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* COMMGAME_H_ */

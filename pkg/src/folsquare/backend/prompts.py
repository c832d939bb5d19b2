"""The five pipeline prompt templates and placeholder substitution.

Placeholders are literal tokens ({question}, {context}, {premises},
{target_statement}, {PLAN}, [[EXECUTION]]); bodies contain literal JSON
braces, so substitution replaces declared tokens only, in a single pass,
and bound values survive verbatim.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass

from folsquare.errors import UnboundPlaceholder


@dataclass(frozen=True)
class PromptTemplate:
    name: str
    body: str
    placeholders: tuple[str, ...]

    @property
    def version(self) -> str:
        return hashlib.sha256(self.body.encode()).hexdigest()[:12]


def render_prompt(template: PromptTemplate, bindings: dict[str, str]) -> str:
    """Substitute every declared placeholder; no other mutation."""
    for name in template.placeholders:
        if name not in bindings:
            raise UnboundPlaceholder(f"{template.name} placeholder {name!r} is unbound")
    tokens = {
        (f"[[{name}]]" if name == "EXECUTION" else f"{{{name}}}"): bindings[name]
        for name in template.placeholders
    }
    pattern = re.compile("|".join(re.escape(tok) for tok in tokens))
    return pattern.sub(lambda m: tokens[m.group(0)], template.body)


SEMANTIC_STRUCTURING = PromptTemplate(
    name="SemanticStructuring",
    placeholders=("question",),
    body="""You are a reasoning expert. Your task is to analyze a logical proposition using the Greimas' Semiotic Square framework, which decomposes a proposition into four positions: S1 (original statement), S2 (semantic contrary), ¬S1 (negation of S1), and ¬S2 (negation of S2).

Core Steps:
1. Extract Core Proposition:
If the question asks "Is the statement 'X' correct?", extract X as S1. Preserve original wording exactly.

2. Identify Semantic Contrary:
Define S2 as a proposition that cannot be true simultaneously with S1, though both may be false. Priority opposition types include:
- Moral: just vs. unjust, good vs. evil
- Behavioral: help vs. harm, benefit vs. hurt
- Authority: obedience vs. independent judgment

3. Build Semiotic Square:
- S1: Original target proposition
- S2: Semantic contrary to S1
- ¬S1: Logical negation of S1
- ¬S2: Logical negation of S2

--------------------------------------------------------------------

Example Analysis:

- Question: Is the statement "repaying a debt is always just" correct?
- Concept A: just
- Concept B: unjust
- S1: Repayment of debt is always just.
  FOL: ∀x (Debt(x) ∧ Repaid(x) → Just(x))
- S2: Repayment of debt is always unjust.
  FOL: ∀x (Debt(x) ∧ Repaid(x) → Unjust(x))
- ......
- S2 Type: Contrary

--------------------------------------------------------------------

Output Format (JSON):
{
  "concept_A": "...",
  "concept_B": "...",
  "S1": {"statement": "...", "FOL": "..."},
  "S2": {"statement": "...", "FOL": "..."},
  "not_S1": {"statement": "...", "FOL": "..."},
  "not_S2": {"statement": "...", "FOL": "..."},
}

Now analyze the following statement using this framework.

Question: {question}
""",
)


TRANSLATOR = PromptTemplate(
    name="Translator",
    placeholders=("context",),
    body="""You are a logical reasoning expert skilled in translating natural language into precise logical structure.

Your task is to extract a list of key premises from the following context.
Each premise must be expressed in two formats:

1. A concise and accurate natural-language statement
2. Its corresponding First-Order Logic (FOL) expression written in standard predicate logic

FOL rules:
- Logical conjunction of expr1 and expr2: expr1 ∧ expr2
- Logical disjunction of expr1 and expr2: expr1 ∨ expr2
- Logical exclusive disjunction of expr1 and expr2: expr1 ⊕ expr2
- Logical negation of expr1: ¬expr1
- expr1 implies expr2: expr1 → expr2
- expr1 if and only if expr2: expr1 ↔ expr2
- Logical universal quantification: ∀x
- Logical existential quantification: ∃x

--------------------------------------------------------------------

Conventions & Guidelines
- Use explicit action variables (a) for actions like "repaying" or "obeying", and object variables (x) for debts, obligations, or rules.
- Use person or role variables (y) for entities like people, rulers, citizens, friends.
- Predicates must apply directly to valid entities or actions --- never nest predicates:
- Typed variables:
  x → debt / obligation / rule
  a → action
  y → person / social role (e.g., friend, ruler, citizen)
- Focus on extracting premises related to obligation, justice, causality, moral norms.
- Quantifiers:
  ∀ (for all), ∃ (there exists), and treat Most / Typically as ∀ (general statements).
- If the context suggests a causal chain (e.g., problematic debt → harm → unjust), write each causal link as a separate premise --- do not collapse into a single line.

--------------------------------------------------------------------

Below is the information you need to deal with right now.

Context:
{context}

--------------------------------------------------------------------

Return your answer in exactly this JSON format:

{
  "premises": [
    {
      "statement": "...",
      "FOL": "..."
    }
    ...
  ]
}
""",
)


PLANNER = PromptTemplate(
    name="Planner",
    placeholders=("target_statement", "premises"),
    body="""You are a logical reasoning expert.

Your task is to draft a step-by-step reasoning plan to determine whether a given logical statement is true, false, or uncertain.

The definition of the three options are:
- True: If the premises can infer the question statement under FOL reasoning rule
- False: If the premises can infer the negation of the question statement under the FOL reasoning rule
- Uncertain: If the premises cannot infer whether the question statement is true or false.

What to do:
1. Identify the goal (the statement to evaluate).
2. Identify which premises, rules, or definitions are relevant.
3. Break down how to logically connect premises to reach intermediate reasonings.
4. Organize the reasoning steps clearly and sequentially.
5. End with a final step: determine whether the statement in the goal is true or false or uncertain, without making the judgment.

--------------------------------------------------------------------

Below is an example

Question:
"Repaying one's debts is always just.",
"∀x (Debt(x) ∧ Repaid(x) → Just(x))"

Premises:
- Justice involves doing good to friends.
  FOL: ∀a (Just(a) → ∀y (Friend(y) → Beneficial(a,y)))
- ......

{
  "plan": [
    "Step 1: Identify the goal...
    ......
    "Step n: Search for counterexamples...
    "Final Step: Decide whether the premises ...
  ]
}

--------------------------------------------------------------------

Below are the premises and questions you need to derive a plan to solve, please follow the instruction and example aforementioned.

Input:

Question
{target_statement}

Premises:
{premises}

--------------------------------------------------------------------

Plan: Make sure you only derive the plan. Do not solve the question and do not determine the truth value of the conclusion at the planning stage. This plan will be used to help guiding a language model to follow step-by-step. The expected final step in the plan is to determine whether the the conclusion is true/false/uncertain.

Do not solve the question and do not determine the truth value at this stage. Only generate a detailed reasoning plan.
""",
)


SOLVER = PromptTemplate(
    name="Solver",
    placeholders=("target_statement", "premises", "PLAN"),
    body="""The task is to determine whether the value of the conclusion/question is true/false/uncertain based on the premises.

You must refer to the following first-order logic reasoning rules when making logical reasoning.

Input Information:

1. Semiotic Square (The statement you need to reason to judge)
2. Formal Premises extracted from the context

Your goal is to evaluate whether the statement in the goal logically follows from the premises. Analyze step-by-step.

Please solve the question step by step. During each step, please indicate what first-order logic reasoning rules you used. Besides, show the reasoning process by the logical operators including but not limited to: ⊕ (either or), ∨ (disjunction), ∧ (conjunction), → (implication), ∀ (universal), ∃ (existential), ¬ (negation), ↔ (equivalence). You can combine natural language and logical operators when doing reasoning.

--------------------------------------------------------------------

Definitions:
- True: A statement is "true" if it necessarily follows from the given premises using logical rules.
- False: A statement is "false" if it is contradicted by the premises or its negation is logically inferred from them or if there are counterexamples.
- Uncertain: A statement is "uncertain" if there is insufficient information in the premises to determine its truth value conclusively.

--------------------------------------------------------------------

Now analyze input

Goal:
{target_statement}

Premises:
{premises}

Plan:
{PLAN}

--------------------------------------------------------------------

Output JSON Format (place this at the end, Ensure the JSON is valid (no trailing commas)):

{
  "steps": [
    "Step 1: ...",
    "Step 2: ...",
    "...",
    "Final answer: {true/false/uncertain}"
  ],
  "verdict": "True" | "False" | "Uncertain"
}
""",
)


REFLECTIVE_VERIFICATION = PromptTemplate(
    name="ReflectiveVerification",
    placeholders=("EXECUTION",),
    body="""Task: Verify the correctness of the execution in determining the value of the conclusion based on the provided context using first-order logic rules.

Verification Process:

Input Analysis:
Original Execution: [[EXECUTION]]

Verification Steps:
1. Identify the Goal: Determine the objective of the original execution.
2. Evaluate the Premises: List given premises and their first-order logic representations.
3. Logical Deduction Analysis:
   - Analyze S1's reasoning chain.
   - Analyze ¬S1's reasoning chain.
   - Check for logical validity and soundness.
4. Verdict Justification: Establish which reasoning is correct.
5. Classification: Categorize the case type.
6. Final Conclusion: Deliver the verified answer.

--------------------------------------------------------------------

Output Format:
Conclude with a revised answer using the following JSON structure:

{
  "verdict": "True" | "False" | "Uncertain",
  "reason": "Type 1: S1 reasoning correct → Return S1's verdict"|
  "Type 2: S1 incorrect, ¬S1 correct with Uncertain verdict → Return Uncertain"|
  "Type 3: S1 correct with Uncertain verdict → Return Uncertain" |
  "Type 4: S1 incorrect, ¬S1 correct with True verdict → Return False" |
  "Type 5: S1 incorrect, ¬S1 correct with False verdict → Return True" |
  "Type 6: Both S1 and ¬S1 incorrect → Return independently verified result"
}

--------------------------------------------------------------------

Verification Execution:
Original Execution: [[EXECUTION]]

Verify:
Please indicate the revised answer at the end using CURLY BRACKETS. The response must be one of:

{
  "verdict": "True" | "False" | "Uncertain",
  "reason": "Type 1: S1 reasoning correct → Return S1's verdict"|
  "Type 2: S1 incorrect, ¬S1 correct with Uncertain verdict → Return Uncertain"|
  "Type 3: S1 correct with Uncertain verdict → Return Uncertain" |
  "Type 4: S1 incorrect, ¬S1 correct with True verdict → Return False" |
  "Type 5: S1 incorrect, ¬S1 correct with False verdict → Return True" |
  "Type 6: Both S1 and ¬S1 incorrect → Return independently verified result"
}
""",
)


TEMPLATES = {
    t.name: t
    for t in (SEMANTIC_STRUCTURING, TRANSLATOR, PLANNER, SOLVER, REFLECTIVE_VERIFICATION)
}

"""Seeded random generation of valid contract specs for property tests.

Atoms are drawn from a small pre-built universe so that even under the
persisting frame policy the reachable state space stays desk-sized.
"""

from __future__ import annotations

import random
from decimal import Decimal

from pacta.model import (
    Add,
    After,
    Before,
    Between,
    ContractSpec,
    EngineConfig,
    ExercisePower,
    FramePolicy,
    Fulfil,
    NormAtom,
    Obligation,
    Power,
    Proposition,
    Remove,
    Rule,
    Terminate,
    TerminatedState,
    TerminalOutcome,
    Violate,
    ViolationRefinement,
)

_WORDS = ["deliver", "pay", "inspect", "report", "repair", "insure", "ship", "certify"]


def generate_spec(
    seed: int,
    max_agents: int = 5,
    max_props: int = 8,
    max_rules: int = 12,
    max_atoms: int = 9,
) -> ContractSpec:
    rng = random.Random(seed)
    agents = [f"party{i}" for i in range(rng.randint(1, max_agents))]

    propositions: dict[str, Proposition] = {}
    for i in range(rng.randint(1, max_props)):
        name = f"{rng.choice(_WORDS)}_{i}"
        attrs = {}
        if rng.random() < 0.4:
            attrs["amount"] = Decimal(f"{rng.randint(1, 99)}.{rng.randint(0, 99):02d}")
        if rng.random() < 0.25:
            attrs["grade"] = rng.choice(["a", "b", "standard \"x\""])
        display = name if rng.random() < 0.5 else f"{name.replace('_', ' ')} as agreed"
        performer = rng.choice(agents) if rng.random() < 0.5 else None
        propositions[name] = Proposition(name, display, attrs, performer)
    prop_names = list(propositions)

    def fresh_obligation() -> Obligation:
        return Obligation(rng.choice(agents), rng.choice(prop_names))

    universe: list[NormAtom] = []
    for _ in range(rng.randint(2, max_atoms)):
        atom = fresh_obligation()
        if atom not in universe:
            universe.append(atom)
    for _ in range(rng.randint(0, 2)):
        if rng.random() < 0.4:
            effect: Obligation | TerminatedState = TerminatedState(
                rng.choice(list(TerminalOutcome))
            )
        else:
            effect = rng.choice([a for a in universe if isinstance(a, Obligation)])
        power = Power(rng.choice(agents), effect)
        if power not in universe:
            universe.append(power)

    obligations = [a for a in universe if isinstance(a, Obligation)]
    initial = frozenset(rng.sample(obligations, k=min(len(obligations), rng.randint(1, 2))))

    def random_qualifier():
        roll = rng.random()
        if roll < 0.7:
            return None
        if roll < 0.85:
            return Before(rng.randint(5, 60))
        if roll < 0.95:
            return After(rng.randint(5, 60))
        t1 = rng.randint(0, 40)
        return Between(t1, t1 + rng.randint(1, 30))

    def random_refinement():
        if rng.random() < 0.3:
            return None  # generic catch-all
        if rng.random() < 0.2:
            return ViolationRefinement(lapse=True)
        dims = rng.sample(["nonconforming", "late", "wrong_performer"], k=rng.randint(1, 2))
        return ViolationRefinement(
            nonconforming="nonconforming" in dims,
            late="late" in dims,
            wrong_performer="wrong_performer" in dims,
        )

    def random_consequents() -> tuple:
        if rng.random() < 0.3:
            return (Terminate(rng.choice(list(TerminalOutcome))),)
        consequents: list = []
        for _ in range(rng.randint(1, 2)):
            atom = rng.choice(universe)
            if rng.random() < 0.2:
                consequents.append(Remove(atom))
            else:
                consequents.append(Add(atom))
        return tuple(consequents)

    rules: list[Rule] = []
    transitions: dict[tuple, TerminalOutcome | None] = {}
    for i in range(rng.randint(1, max_rules)):
        guard = rng.choice(universe)
        subject = guard if rng.random() < 0.8 else rng.choice(universe)
        if isinstance(subject, Power):
            label = ExercisePower(subject.bearer, subject.effect, random_qualifier())
        elif rng.random() < 0.55:
            label = Fulfil(subject.bearer, subject.prop, random_qualifier())
        else:
            label = Violate(subject.bearer, subject.prop, random_refinement(), None)
        consequents = random_consequents()
        if (
            isinstance(label, ExercisePower)
            and isinstance(label.effect, Obligation)
            and any(isinstance(c, Terminate) for c in consequents)
        ):
            # terminating here would contradict the exercised content taking force
            consequents = (Add(label.effect),)
        outcome = consequents[0].outcome if isinstance(consequents[0], Terminate) else None
        key = (guard, label)
        if key in transitions and transitions[key] != outcome:
            continue  # would make the same transition terminate two ways
        transitions[key] = outcome
        rules.append(Rule(f"r{i}", guard, label, consequents))

    config = EngineConfig(
        frame_policy=rng.choice(list(FramePolicy)),
        violation_axiom=rng.random() < 0.85,
        state_bound=10_000 if rng.random() < 0.8 else 5_000,
    )
    return ContractSpec(
        name=f"generated_{seed}",
        agents=tuple(agents),
        propositions=propositions,
        initial=initial,
        rules=tuple(rules),
        config=config,
    )


def generate_small_spec(seed: int) -> ContractSpec:
    """Instances small enough for the subset-enumeration oracle."""
    return generate_spec(seed, max_agents=3, max_props=3, max_rules=8, max_atoms=6)

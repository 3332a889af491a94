"""Built-in registry of multitasking test cases over the Augerat P benchmark."""

from __future__ import annotations

__all__ = ["INSTANCE_ORDER", "SMALL_FAMILY", "LARGE_FAMILY", "TEST_CASES", "testcase_instances"]

INSTANCE_ORDER = (
    "P-n16-k8", "P-n19-k2", "P-n20-k2", "P-n21-k2", "P-n22-k2", "P-n23-k8",
    "P-n50-k7", "P-n50-k8", "P-n55-k7", "P-n55-k15", "P-n60-k10", "P-n60-k15",
)

SMALL_FAMILY = INSTANCE_ORDER[:6]
LARGE_FAMILY = INSTANCE_ORDER[6:]

TEST_CASES = {
    "TC_4_1": ("P-n16-k8", "P-n19-k2", "P-n20-k2", "P-n21-k2"),
    "TC_4_2": ("P-n20-k2", "P-n21-k2", "P-n22-k2", "P-n23-k8"),
    "TC_4_3": ("P-n50-k7", "P-n50-k8", "P-n55-k7", "P-n55-k15"),
    "TC_4_4": ("P-n55-k7", "P-n55-k15", "P-n60-k10", "P-n60-k15"),
    "TC_6_1": ("P-n16-k8", "P-n19-k2", "P-n20-k2", "P-n50-k7", "P-n50-k8", "P-n55-k7"),
    "TC_6_2": ("P-n21-k2", "P-n22-k2", "P-n23-k8", "P-n55-k15", "P-n60-k10", "P-n60-k15"),
    "TC_6_3": ("P-n16-k8", "P-n19-k2", "P-n20-k2", "P-n55-k15", "P-n60-k10", "P-n60-k15"),
    "TC_6_4": ("P-n21-k2", "P-n22-k2", "P-n23-k8", "P-n50-k7", "P-n50-k8", "P-n55-k7"),
    "TC_6_5": ("P-n16-k8", "P-n19-k2", "P-n20-k2", "P-n21-k2", "P-n22-k2", "P-n23-k8"),
    "TC_6_6": ("P-n50-k7", "P-n50-k8", "P-n55-k7", "P-n55-k15", "P-n60-k10", "P-n60-k15"),
    "TC_12": INSTANCE_ORDER,
}


def testcase_instances(testcase_id: str) -> tuple:
    try:
        return TEST_CASES[testcase_id]
    except KeyError:
        known = ", ".join(sorted(TEST_CASES))
        raise KeyError(f"unknown test case {testcase_id!r}; known: {known}")

"""
Tree rendering of suite reports.

Check ids are dotted paths, so a report is shown as a tree grouped by id
segment with one leaf per check.
"""

from typing import Dict, List, Tuple

from anytree import Node, RenderTree

from imagshift.verify.report import CheckResult, SuiteReport


def _verdict(passed: bool) -> str:
    return 'PASS' if passed else 'FAIL'


def _leaf_label(name: str, check: CheckResult) -> str:
    if check.defect is None:
        label = f"{name}: ERR (tol {check.tol:.1e}) {_verdict(check.passed)}"
    else:
        label = f"{name}: defect {check.defect:.3e} <= {check.tol:.1e} {_verdict(check.passed)}"
    if check.ms:
        label += f" [{check.ms} ms]"
    return label


def build_tree(report: SuiteReport) -> Node:
    """
    Build an anytree hierarchy from a report.

    Group nodes carry ``passed``; leaves carry ``check``.
    """
    root = Node(f"{report.suite} ({_verdict(report.passed)})", passed=report.passed)
    groups: Dict[Tuple[str, ...], Node] = {(): root}

    for check in report.checks:
        parts = check.id.split('.')
        path: Tuple[str, ...] = ()
        for part in parts[:-1]:
            path = path + (part,)
            if path not in groups:
                groups[path] = Node(part, parent=groups[path[:-1]], passed=True)
            if not check.passed:
                groups[path].passed = False
        Node(_leaf_label(parts[-1], check), parent=groups[path], check=check)

    # group labels get their verdict once every check is placed
    for path, node in groups.items():
        if path:
            node.name = f"{node.name} ({_verdict(node.passed)})"
    return root


def render_tree(root: Node, failures_only: bool = False) -> str:
    """
    Render a report tree as text.

    Args:
        root: Root returned by :func:`build_tree`
        failures_only: Show only failing checks and their ancestors

    Returns:
        The rendered tree, one node per line
    """
    lines: List[str] = []
    for pre, _, node in RenderTree(root):
        if failures_only and getattr(node, 'passed', None) is True:
            continue
        check = getattr(node, 'check', None)
        if failures_only and check is not None and check.passed:
            continue
        lines.append(f"{pre}{node.name}")
        if check is not None and check.error:
            lines.append(f"{pre.replace('├', '│').replace('└', ' ').replace('─', ' ')}    error: {check.error}")
        elif check is not None and check.note:
            lines.append(f"{pre.replace('├', '│').replace('└', ' ').replace('─', ' ')}    note: {check.note}")
    return '\n'.join(lines) + '\n'


def render_report(report: SuiteReport, failures_only: bool = False) -> str:
    """Text rendering of a report: tree followed by a one-line summary."""
    text = render_tree(build_tree(report), failures_only)
    failed = len(report.failures)
    return text + f"\n{len(report.checks) - failed}/{len(report.checks)} checks passed\n"

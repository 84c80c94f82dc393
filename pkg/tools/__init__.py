"""
保守用スクリプト。
"""

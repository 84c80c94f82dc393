"""
algebra-core: 有限 ipo 半群の表・公理チェック・派生演算。
"""
